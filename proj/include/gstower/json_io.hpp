#ifndef GSTOWER_JSON_IO_HPP
#define GSTOWER_JSON_IO_HPP

#include <filesystem>

#include <json.hpp>

#include <gstower/certified.hpp>
#include <gstower/cft.hpp>
#include <gstower/series.hpp>

namespace gstower
{

using Json = nlohmann::ordered_json;

// Reads and parses a JSON document; FixtureError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path &path);

// Rationals travel as "p/q" strings; plain integers are also accepted on input.
Rational rational_from_json(const Json &j, const char *what);
Json to_json(const Rational &q);

// {"d": 5, "relations": [{"depth": 2, "count": 6}], "tails": [{"coeff": "1/1", "start": 4, "ratio": "4/1"}]}
GSSeries series_from_json(const Json &j);
Json to_json(const GSSeries &s);
GSSeries load_series(const std::filesystem::path &path);

RankProfile profile_from_json(const Json &j);
Json to_json(const RankProfile &rp);
RankProfile load_profile(const std::filesystem::path &path);

CertifiedReal certified_from_json(const Json &j);
Json to_json(const CertifiedReal &x);

Json to_json(const Verdict &v);

} // namespace gstower

#endif
