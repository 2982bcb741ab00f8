#pragma once

#include <map>
#include <vector>

#include "yano/curve.hpp"
#include "yano/rational.hpp"

namespace yano {

// Support of the generating series
//
//   R(t) = t + sum_k t^{r_k/R_k} (1-t)/(1-t^{1/R_k})
//            - sum_k t^{r'_k/R'_k} (1-t)/(1-t^{1/R'_k})
//
// expanded exactly into an exponent -> coefficient map.  Stored coefficients
// are never zero; iteration order is ascending exponent.
struct ExponentSeries {
    std::map<Rat, long long> terms;

    long long term_count() const {
        long long c = 0;
        for (const auto& [e, k] : terms) c += k;
        return c;
    }
    bool nonnegative() const {
        for (const auto& [e, k] : terms)
            if (k < 0) return false;
        return true;
    }
};

// Each block t^{r/R}(1-t)/(1-t^{1/R}) expands as sum_{j=0}^{R-1} t^{(r+j)/R};
// cancellation between the plain and primed blocks is exact.
inline ExponentSeries expand_generating_series(const YanoExponentData& d) {
    ExponentSeries s;
    auto add = [&s](const Rat& e, long long c) {
        auto it = s.terms.find(e);
        if (it == s.terms.end()) {
            s.terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) s.terms.erase(it);
        }
    };
    add(Rat(1), 1);
    const int g = (int)d.r.size();
    for (int k = 1; k <= g; ++k)
        for (long long j = 0; j < d.R[k]; ++j) add(Rat(d.r[k - 1] + j, d.R[k]), 1);
    for (int k = 0; k <= g; ++k)
        for (long long j = 0; j < d.Rp[k]; ++j) add(Rat(d.rp[k] + j, d.Rp[k]), -1);
    return s;
}

inline ExponentSeries expand_generating_series(const CharacteristicSequence& cs) {
    return expand_generating_series(exponent_data(cs));
}

} // namespace yano
