#include <gstower/json_io.hpp>

#include <gstower/errors.hpp>

#include <fstream>

namespace gstower
{

namespace
{

const Json &field(const Json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw FixtureError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

template <typename T> T integer_field(const Json &j, const char *key)
{
    const Json &v = field(j, key);
    if (!v.is_number_integer()) {
        throw FixtureError(std::string("field \"") + key + "\" must be an integer");
    }
    return v.get<T>();
}

} // namespace

Json read_json_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw FixtureError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw FixtureError(path.string() + ": " + e.what());
    }
}

Rational rational_from_json(const Json &j, const char *what)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(Integer(std::to_string(j.get<long long>())));
    }
    throw FixtureError(std::string(what) + " must be a \"p/q\" string");
}

Json to_json(const Rational &q)
{
    return to_string(q);
}

static GSSeries series_from_json_unchecked(const Json &j)
{
    GSSeries s(integer_field<int>(j, "d"));
    if (s.generators() < 0) {
        throw FixtureError("d must be nonnegative");
    }
    if (j.contains("relations")) {
        for (const auto &rel : j.at("relations")) {
            auto count = integer_field<std::int64_t>(rel, "count");
            if (count < 0) {
                throw FixtureError("relation count must be nonnegative");
            }
            s.add_relations(integer_field<int>(rel, "depth"), count);
        }
    }
    if (j.contains("tails")) {
        for (const auto &tail : j.at("tails")) {
            s.add_tail(Tail{rational_from_json(field(tail, "coeff"), "coeff"), integer_field<int>(tail, "start"),
                            rational_from_json(field(tail, "ratio"), "ratio")});
        }
    }
    return s;
}

GSSeries series_from_json(const Json &j)
{
    try {
        return series_from_json_unchecked(j);
    } catch (const nlohmann::json::exception &e) {
        throw FixtureError(e.what());
    }
}

Json to_json(const GSSeries &s)
{
    Json relations = Json::array();
    for (const auto &[depth, count] : s.relations()) {
        relations.push_back({{"depth", depth}, {"count", count}});
    }
    Json tails = Json::array();
    for (const auto &t : s.tails()) {
        tails.push_back({{"coeff", to_string(t.coeff)}, {"start", t.start}, {"ratio", to_string(t.ratio)}});
    }
    return {{"d", s.generators()}, {"relations", relations}, {"tails", tails}};
}

GSSeries load_series(const std::filesystem::path &path)
{
    return series_from_json(read_json_file(path));
}

static RankProfile profile_from_json_unchecked(const Json &j)
{
    RankProfile rp;
    rp.p = integer_field<int>(j, "p");
    rp.r1 = integer_field<int>(j, "r1");
    rp.r2 = integer_field<int>(j, "r2");
    rp.delta_K = integer_field<int>(j, "delta_K");
    rp.B_S_rank = integer_field<int>(j, "B_S_rank");
    if (j.contains("measured_d") && !j.at("measured_d").is_null()) {
        rp.measured_d = integer_field<int>(j, "measured_d");
    }
    if (j.contains("provenance")) {
        rp.provenance = j.at("provenance").get<std::string>();
    }
    for (const auto &place : field(j, "S")) {
        RankPlace v;
        v.norm = field(place, "norm").get<std::string>();
        v.delta_v = integer_field<int>(place, "delta_v");
        v.tame = field(place, "tame").get<bool>();
        if (place.contains("local_degree")) {
            v.local_degree = integer_field<int>(place, "local_degree");
        }
        rp.S.push_back(std::move(v));
    }
    try {
        validate(rp);
    } catch (const PreconditionError &e) {
        throw FixtureError(std::string("rank profile: ") + e.what());
    }
    return rp;
}

RankProfile profile_from_json(const Json &j)
{
    try {
        return profile_from_json_unchecked(j);
    } catch (const nlohmann::json::exception &e) {
        throw FixtureError(e.what());
    }
}

Json to_json(const RankProfile &rp)
{
    Json places = Json::array();
    for (const auto &v : rp.S) {
        Json place = {{"norm", v.norm}, {"delta_v", v.delta_v}, {"tame", v.tame}};
        if (!v.tame) {
            place["local_degree"] = v.local_degree;
        }
        places.push_back(place);
    }
    Json j = {{"p", rp.p}, {"r1", rp.r1}, {"r2", rp.r2}, {"delta_K", rp.delta_K}, {"S", places},
              {"B_S_rank", rp.B_S_rank}};
    if (rp.measured_d) {
        j["measured_d"] = *rp.measured_d;
    }
    return j;
}

RankProfile load_profile(const std::filesystem::path &path)
{
    return profile_from_json(read_json_file(path));
}

static CertifiedReal certified_from_json_unchecked(const Json &j)
{
    Rational lower = rational_from_json(field(j, "lower"), "lower");
    Rational upper = rational_from_json(field(j, "upper"), "upper");
    if (lower > upper) {
        throw FixtureError("interval lower end exceeds upper end");
    }
    return CertifiedReal(lower, upper);
}

CertifiedReal certified_from_json(const Json &j)
{
    try {
        return certified_from_json_unchecked(j);
    } catch (const nlohmann::json::exception &e) {
        throw FixtureError(e.what());
    }
}

Json to_json(const CertifiedReal &x)
{
    return {{"lower", to_string(x.lower())}, {"upper", to_string(x.upper())}};
}

Json to_json(const Verdict &v)
{
    Json j = {{"kind", to_string(v.kind)}};
    j["t0"] = v.t0 ? Json(to_string(*v.t0)) : Json(nullptr);
    j["value"] = v.value ? Json(to_string(*v.value)) : Json(nullptr);
    j["provably_positive"] = v.provably_positive;
    return j;
}

} // namespace gstower
