#include "enr/json_io.hpp"

namespace enr {

using nlohmann::json;

json to_json(const Int& a) {
    if (a >= std::numeric_limits<std::int64_t>::min() &&
        a <= std::numeric_limits<std::int64_t>::max())
        return a.convert_to<std::int64_t>();
    return a.str(); // decimal string beyond 64 bits
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("int_from_json: expected integer or decimal string");
}

json to_json(const NSClass& x) {
    json coords = json::array();
    for (int i = 0; i < kRank; ++i) coords.push_back(to_json(x.c[i]));
    return json{{"coords", coords}, {"kx", x.kx}};
}

NSClass ns_from_json(const json& j) {
    NSClass x;
    const auto& coords = j.at("coords");
    if (!coords.is_array() || coords.size() != kRank)
        throw std::invalid_argument("ns_from_json: coords must have 10 entries");
    for (int i = 0; i < kRank; ++i) x.c[i] = int_from_json(coords[i]);
    x.kx = j.value("kx", 0) & 1;
    return x;
}

json to_json(const MukaiVector& v) {
    json coords = json::array();
    for (int i = 0; i < kRank; ++i) coords.push_back(to_json(v.xi.c[i]));
    return json{{"r", to_json(v.r)}, {"xi", coords}, {"kx", v.xi.kx}, {"s", to_json(v.s)}};
}

MukaiVector mukai_from_json(const json& j) {
    NSClass xi;
    const auto& coords = j.at("xi");
    if (!coords.is_array() || coords.size() != kRank)
        throw std::invalid_argument("mukai_from_json: xi must have 10 entries");
    for (int i = 0; i < kRank; ++i) xi.c[i] = int_from_json(coords[i]);
    xi.kx = j.value("kx", 0) & 1;
    return MukaiVector(int_from_json(j.at("r")), std::move(xi), int_from_json(j.at("s")));
}

json to_json(const DimValue& d) {
    const char* kind = d.kind == DimValue::Kind::Exact ? "exact"
                       : d.kind == DimValue::Kind::UpperBound ? "upper_bound"
                                                              : "rigid";
    return json{{"kind", kind}, {"value", to_json(d.value)}};
}

DimValue dim_from_json(const json& j) {
    DimValue d;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "exact") d.kind = DimValue::Kind::Exact;
    else if (kind == "upper_bound") d.kind = DimValue::Kind::UpperBound;
    else if (kind == "rigid") d.kind = DimValue::Kind::Rigid;
    else throw std::invalid_argument("dim_from_json: unknown kind " + kind);
    d.value = int_from_json(j.at("value"));
    return d;
}

json to_json(const CaseClassification& c) {
    json j;
    j["case"] = c.kind == CaseKind::A ? "A" : c.kind == CaseKind::B ? "B" : "C";
    j["witness"] = c.witness ? to_json(*c.witness) : json(nullptr);
    j["threshold_unit"] = to_json(c.threshold_unit);
    return j;
}

CaseClassification classification_from_json(const json& j) {
    CaseClassification c;
    std::string k = j.at("case").get<std::string>();
    c.kind = k == "A" ? CaseKind::A : k == "B" ? CaseKind::B : CaseKind::C;
    if (!j.at("witness").is_null()) c.witness = mukai_from_json(j.at("witness"));
    c.threshold_unit = int_from_json(j.at("threshold_unit"));
    return c;
}

namespace {

json opt_bool(const std::optional<bool>& b) {
    if (!b) return json(nullptr);
    return json(*b);
}

std::optional<bool> opt_bool_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<bool>();
}

} // namespace

json to_json(const ExistenceReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["v"] = to_json(r.v);
    j["L"] = to_json(r.L);
    j["slope"] = json{{"l", to_json(r.slope.l)},
                      {"r0", to_json(r.slope.r0)},
                      {"xi0", to_json(r.slope.xi0)}};
    j["classification"] = to_json(r.classification);
    j["threshold"] = to_json(r.threshold);
    j["mu_stable_exists"] = r.mu_stable_exists;
    j["mu_stable_locally_free_exists"] = r.mu_stable_locally_free_exists;
    j["stack_dim"] = to_json(r.stack_dim);
    j["reduced"] = r.reduced;
    j["normal"] = r.normal;
    j["connected"] = opt_bool(r.connected);
    j["irreducible"] = opt_bool(r.irreducible);
    j["notes"] = r.notes;
    return j;
}

ExistenceReport report_from_json(const json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("report_from_json: schema_version mismatch");
    ExistenceReport r;
    r.v = mukai_from_json(j.at("v"));
    r.L = ns_from_json(j.at("L"));
    r.slope.l = int_from_json(j.at("slope").at("l"));
    r.slope.r0 = int_from_json(j.at("slope").at("r0"));
    r.slope.xi0 = ns_from_json(j.at("slope").at("xi0"));
    r.classification = classification_from_json(j.at("classification"));
    r.threshold = int_from_json(j.at("threshold"));
    r.mu_stable_exists = j.at("mu_stable_exists").get<bool>();
    r.mu_stable_locally_free_exists = j.at("mu_stable_locally_free_exists").get<bool>();
    r.stack_dim = dim_from_json(j.at("stack_dim"));
    r.reduced = j.at("reduced").get<bool>();
    r.normal = j.at("normal").get<bool>();
    r.connected = opt_bool_from(j.at("connected"));
    r.irreducible = opt_bool_from(j.at("irreducible"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
}

json to_json(const StratumType& t, const StratumDim& dim) {
    json blocks = json::array();
    for (size_t i = 0; i < t.blocks.size(); ++i) {
        blocks.push_back(json{{"l", to_json(t.blocks[i].l)},
                              {"s2", to_json(t.blocks[i].s2)},
                              {"vector", to_json(t.block_vector(i))}});
    }
    json j;
    j["kind"] = t.kind == StratumKind::HN_slope ? "HN_slope"
                : t.kind == StratumKind::HN_surface ? "HN_surface"
                                                    : "fiber_quotient";
    j["blocks"] = blocks;
    j["realizable"] = dim.realizable;
    if (dim.realizable) {
        j["dim"] = to_json(dim.dim);
        j["dim_exact"] = dim.exact;
        j["codim"] = to_json(dim.codim);
        j["codim_worst_ext2"] = to_json(dim.codim_worst_ext2);
    }
    return j;
}

json to_json(const WallClass& w) {
    return json{{"eta", to_json(w.eta)},
                {"multiplicity", to_json(w.multiplicity)},
                {"rF", to_json(w.rF)},
                {"norm", to_json(w.norm)}};
}

json to_json(const PsiImage& p) {
    json j;
    j["vector"] = p.vector ? to_json(*p.vector) : json(nullptr);
    j["rank_after"] = to_json(p.rank_after);
    j["deg_e1_after"] = to_json(p.deg_e1_after);
    j["chi_after"] = to_json(p.chi_after);
    j["note"] = p.note;
    return j;
}

json to_json(const BoundaryDivisor& b) {
    return json{{"name", b.name},
                {"block", to_json(b.block)},
                {"support", b.support},
                {"pairing", to_json(b.pairing)}};
}

} // namespace enr
