#pragma once

#include <json.hpp>

#include "yano/candidates.hpp"
#include "yano/pipelines.hpp"
#include "yano/yano_series.hpp"

namespace yano {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& r) { return Json{{"num", r.num()}, {"den", r.den()}}; }

inline Json to_json(const ExponentSeries& s) {
    Json arr = Json::array();
    for (const auto& [e, c] : s.terms)
        arr.push_back(Json{{"num", e.num()}, {"den", e.den()}, {"coeff", c}});
    return arr;
}

inline Json witness_to_json(const Witness& w) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, WitnessA11>)
                return Json{{"beta1", v.b1}, {"beta2", v.b2}};
            else if constexpr (std::is_same_v<T, WitnessA12>)
                return Json{{"i0", v.i0}, {"j0", v.j0}};
            else if constexpr (std::is_same_v<T, WitnessA21>)
                return Json{{"beta1", v.b1}, {"beta2", v.b2}, {"beta3", v.b3}};
            else
                return Json{{"a", v.ap}, {"b", v.bp}, {"l", v.l}};
        },
        w);
}

inline Json to_json(const CandidateRoot& c) {
    return Json{{"family", family_name(c.family)},
                {"value", to_json(c.value)},
                {"k", c.k},
                {"witness", witness_to_json(c.witness)}};
}

inline Json to_json(const std::vector<CandidateRoot>& v) {
    Json arr = Json::array();
    for (const auto& c : v) arr.push_back(to_json(c));
    return arr;
}

inline Json to_json(const ResidueReport& r) {
    Json sym{{"prefactor", to_json(r.symbolic.prefactor)},
             {"beta_args", Json::array({to_json(r.symbolic.arg1), to_json(r.symbolic.arg2)})}};
    if (!(r.symbolic.mn1_power == Rat(0)))
        sym["mn1_power"] = to_json(r.symbolic.mn1_power);
    Json adj = Json::array();
    for (const auto& e : r.adjudication)
        adj.push_back(Json{{"name", e.name}, {"value", e.value}, {"rel_error", e.rel_error}});
    return Json{{"alpha", to_json(r.alpha)},
                {"family", family_name(r.family)},
                {"witness", witness_to_json(r.witness)},
                {"measured", r.measured},
                {"closed_form", r.closed_form},
                {"symbolic", sym},
                {"rel_error", r.rel_error},
                {"flags",
                 Json{{"arg1_nonintegral", r.arg1_nonintegral},
                      {"arg2_nonintegral", r.arg2_nonintegral},
                      {"sum_nonintegral", r.sum_nonintegral}}},
                {"adjudication", adj},
                {"matched", r.matched},
                {"config_fingerprint", r.config_fingerprint}};
}

} // namespace yano
