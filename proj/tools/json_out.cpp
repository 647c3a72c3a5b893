#include "json_out.hpp"

#include <algorithm>

#include "h3/error.hpp"

namespace h3::cli {

Json to_json(const Triple& t)
{
    return Json::array({t.a, t.b, t.c});
}

Json to_json(const std::vector<Triple>& ts)
{
    Json out = Json::array();
    for (const auto& t : ts)
        out.push_back(to_json(t));
    return out;
}

Json to_json(const WalkSeq& w)
{
    return Json(w.vertices());
}

Json to_json(const std::vector<WalkSeq>& ws)
{
    std::vector<std::vector<Vertex>> cycles;
    for (const auto& w : ws)
        cycles.push_back(canonical_cycle(w.vertices()));
    std::sort(cycles.begin(), cycles.end());
    return Json(cycles);
}

Json to_json(const DivisibilityResult& d)
{
    Json out{{"ok", d.ok}};
    if (d.violation) {
        const auto& v = *d.violation;
        static const char* names[] = {"vertex-degree", "edge-count", "codegree"};
        Json j{{"what", names[static_cast<int>(v.what)]}};
        if (v.vertex)
            j["vertex"] = *v.vertex;
        if (v.pair)
            j["pair"] = Json::array({v.pair->u, v.pair->v});
        j["value"] = v.value;
        j["modulus"] = v.modulus;
        j["text"] = v.describe();
        out["violation"] = j;
    }
    return out;
}

Json to_json(const Tripartition& p)
{
    return Json{{"sizes", p.sizes}, {"labels", p.labels}};
}

Json to_json(const NoTourCertificate& c)
{
    return Json{{"valid", c.valid()},     {"h112", c.h112},           {"h122", c.h122},
                {"mixed", c.mixed},       {"h112_mod3", c.h112_mod3()}, {"h122_mod3", c.h122_mod3()},
                {"partition", to_json(c.partition)}};
}

Json to_json(const DecompositionReport& r)
{
    Json stages = Json::array();
    for (const auto& s : r.stages)
        stages.push_back(
            {{"name", s.name}, {"cycles", s.cycles}, {"leftover", s.leftover}, {"delta2", s.delta2}, {"note", s.note}});
    return Json{{"ell", r.ell},
                {"status", to_string(r.status)},
                {"cycles", r.cycles},
                {"leftover", to_json(r.leftover)},
                {"stats",
                 {{"covered", r.stats.covered},
                  {"delta2", r.stats.delta2},
                  {"iterations", r.stats.iterations},
                  {"seed", r.stats.seed},
                  {"nodes", r.stats.nodes}}},
                {"stages", stages}};
}

Json to_json(const FractionalResult& r)
{
    return Json{{"status", to_string(r.status)}, {"exact", r.exact},     {"max_violation", r.max_violation},
                {"pivots", r.pivots},            {"cycles", r.cycles}, {"weights", r.weights}};
}

Json to_json(const SeaStep& s)
{
    return Json{{"rule", s.rule},
                {"arcs_before", s.arcs_before},
                {"arcs_after", s.arcs_after},
                {"phi_before", s.phi_before},
                {"phi_after", s.phi_after},
                {"vertices", s.vertices}};
}

Tripartition partition_from_json(const Json& j)
{
    const Json* labels = nullptr;
    if (j.is_array())
        labels = &j;
    else if (j.contains("labels"))
        labels = &j["labels"];
    else if (j.contains("partition") && j["partition"].contains("labels"))
        labels = &j["partition"]["labels"];
    if (labels == nullptr || !labels->is_array())
        fail(ErrorCode::ParseError, "partition JSON needs a labels array");
    std::vector<std::uint8_t> out;
    for (const auto& x : *labels) {
        if (!x.is_number_unsigned() || x.get<unsigned>() > 2)
            fail(ErrorCode::ParseError, "partition labels must be 0, 1 or 2");
        out.push_back(x.get<std::uint8_t>());
    }
    return Tripartition::from_labels(std::move(out));
}

} // namespace h3::cli
