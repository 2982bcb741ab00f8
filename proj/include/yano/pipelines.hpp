#pragma once

#include <string>
#include <vector>

#include "yano/candidates.hpp"
#include "yano/continuation.hpp"
#include "yano/gamma.hpp"
#include "yano/models.hpp"

namespace yano {

// ---------------------------------------------------------------------------
// Plus chain:  x -> x^m, y -> y^{n1}, split the square into triangles, blow
// up.  I(f,b1,b2) = m n1 (I1 + I2) with the two handles below.
struct PlusHandles {
    TwoVarIntegral I1, I2;
    long long prefactor;   // m n1
};

inline PlusHandles transform_plus(const PlusModel& model, long long beta1, long long beta2) {
    const auto& cc = model.cc;
    if (beta1 < 1 || beta2 < 1) throw RangeViolation("transform_plus: beta_i >= 1");
    Poly2 f = model.f();
    Poly2 ft = f.substitute_monomials(cc.m, 0, 0, cc.n1);
    Poly2 f1 = ft.substitute_monomials(1, 0, 1, 1).divide_monomial(cc.m * cc.n1 * cc.n2, 0);
    Poly2 f2 = ft.substitute_monomials(1, 1, 0, 1).divide_monomial(0, cc.m * cc.n1 * cc.n2);
    for (const Poly2* p : {&f1, &f2}) {
        // cheap sample guard; the thorough certificate is check_positivity
        for (double v : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (double w : {0.0, 0.25, 0.5, 0.75, 1.0})
                if (!(p->evaluate<double>(v, w) > 0))
                    throw PositivityLost("transform_plus: integrand not positive on square");
    }
    PlusHandles out;
    out.I1 = {f1, cc.m * cc.n1 * cc.n2, cc.m * beta1 + cc.n1 * beta2, 0, cc.n1 * beta2, Rat(1)};
    out.I2 = {f2, 0, cc.m * beta1, cc.m * cc.n1 * cc.n2, cc.m * beta1 + cc.n1 * beta2, Rat(1)};
    out.prefactor = cc.m * cc.n1;
    return out;
}

// Residue of I(f,b1,b2) at alpha = -(m b1 + n1 b2 + nu)/(m n1 n2).
template <class R>
R plus_residue(const PlusHandles& h, const Rat& alpha, const QuadratureConfig& cfg) {
    const Rat nu1 = -(alpha * Rat(h.I1.a1) + Rat(h.I1.b1));
    if (!nu1.is_integer() || nu1.num() < 0)
        throw Error("plus_residue: alpha is not in the pole family");
    R r1 = residue_two_var_x<R>(h.I1, nu1.num(), cfg);
    R r2 = residue_two_var_y<R>(h.I2, nu1.num(), cfg);
    return R(h.prefactor) * (r1 + r2);
}

// ---------------------------------------------------------------------------
// Minus chain:  x -> x^m, y -> y^{n1};  y -> x y;  y -> (1-y) Y2(x);  then
// ghat_Y splits the integral into J_{i,j} pieces, each continued after the
// (q,n2) version of the plus chain.
struct JTerm {
    long long i = 1, j = 0;
    BigRat b_ij;               // coefficient of x^j y^{i-1} in ghat_Y
    long long nu = -1;         // pole offset of J_{i,j} at the target (< 0: none)
    TwoVarIntegral J1, J2;
};

struct MinusHandles {
    std::vector<JTerm> terms;
    long long prefactor;       // m n1
    Poly2 fhat, ghat;          // kept for inspection/positivity
    Poly2 F1, F2;
};

inline MinusHandles transform_minus(const MinusModel& model, long long beta1,
                                    long long beta2, long long beta3,
                                    const Rat& alpha, long long safety_extra = 0) {
    const auto& cc = model.cc;
    if (beta1 < 1 || beta2 < 1 || beta3 < 0)
        throw RangeViolation("transform_minus: need beta1,beta2 >= 1, beta3 >= 0");
    const long long m = cc.m, n1 = cc.n1, n2 = cc.n2, q = cc.q;
    const long long D = cc.D();

    Poly2 f = model.f();
    Poly2 gY = model.gY();
    Poly2 fA = f.substitute_monomials(m, 0, 0, n1);
    Poly2 gA = gY.substitute_monomials(m, 0, 0, n1);
    Poly2 fB = fA.substitute_monomials(1, 0, 1, 1).divide_monomial(m * n1 * n2, 0);
    Poly2 gB = gA.substitute_monomials(1, 0, 1, 1).divide_monomial(m * n1, 0);

    Poly2 G = (Poly2::constant(BigRat(1)) - Poly2::monomial(0, 1)) * model.Y2();
    Poly2 fhat = fB.compose_y(G);
    Poly2 ghat_num = gB.compose_y(G).pow(beta3) * G.pow(n1 * beta2 - 1);
    Poly2 ghat = ghat_num.divide_monomial(0, beta3);

    // (q,n2) split of fhat, shared by every J term
    Poly2 F1 = fhat.substitute_monomials(n2, 0, q, q).divide_monomial(q * n2, 0);
    Poly2 F2 = fhat.substitute_monomials(n2, n2, 0, q).divide_monomial(0, q * n2);
    for (const Poly2* p : {&F1, &F2}) {
        for (double v : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (double w : {0.0, 0.25, 0.5, 0.75, 1.0})
                if (!(p->evaluate<double>(v, w) > 0))
                    throw PositivityLost("transform_minus: integrand not positive on square");
    }

    const long long M = m * beta1 + n1 * beta2 + m * n1 * beta3;
    // offset of the target inside the J_{1,0} pole family
    const Rat k_off = -(alpha * Rat(n2 * D)) - Rat(n2 * M + q * (beta3 + 1));
    if (!k_off.is_integer())
        throw Error("transform_minus: alpha is not in the J pole lattice");
    const long long k = k_off.num();
    const long long safety = std::max(n2, q) + safety_extra * std::max(n2, q);

    MinusHandles out;
    out.prefactor = m * n1;
    out.fhat = fhat;
    out.ghat = ghat;
    out.F1 = F1;
    out.F2 = F2;
    for (const auto& [key, coef] : ghat.terms()) {
        const long long j = key.first, i = key.second + 1;
        const long long shift = n2 * j + q * (i - 1);
        // nu for this term's pole family at the target
        const long long nu = k - shift;
        if (shift > k + safety) {
            if (nu >= 0)
                throw TruncationInsufficient("transform_minus: retained bound " +
                                             std::to_string(k + safety));
            continue;
        }
        JTerm t;
        t.i = i;
        t.j = j;
        t.b_ij = coef;
        t.nu = nu;
        const long long Bij = n2 * (M + j) + q * (beta3 + i);
        t.J1 = {F1, n2 * D, Bij, 0, q * (beta3 + i), Rat(n2 * q)};
        t.J2 = {F2, m * n1 * n2 * n2, n2 * (M + j), n2 * D, Bij, Rat(n2 * q)};
        out.terms.push_back(std::move(t));
    }
    return out;
}

template <class R>
R minus_residue(const MinusHandles& h, const Rat& alpha, const QuadratureConfig& cfg) {
    R total = 0;
    for (const auto& t : h.terms) {
        // a term whose shared pole family misses alpha can still meet it
        // through the x family of its J2 piece (only when gcd(q, m n1) > 1);
        // that residue is outside this decomposition's reach
        Rat p1_hit = -(alpha * Rat(t.J2.a1) + Rat(t.J2.b1));
        if (p1_hit.is_integer() && p1_hit.num() >= 0 && t.nu < 0)
            throw DoublePole("minus_residue: alpha meets the P1 pole family");
        if (t.nu < 0) continue;
        R r1 = residue_two_var_x<R>(t.J1, t.nu, cfg);
        R r2 = residue_two_var_y<R>(t.J2, t.nu, cfg);
        total += from_bigrat<R>(t.b_ij) * (r1 + r2);
    }
    return R(h.prefactor) * total;
}

// ---------------------------------------------------------------------------
// check_positivity: witness sampling on the model's own domain plus the
// subdivision certificate on the blown-up integrands (which cover the
// punctured domain exactly).
struct PositivityReport {
    bool positive = false;
    bool inconclusive = false;
    double witness_x = 0, witness_y = 0;
    long long cells = 0;
};

namespace detail {

template <class FEval>
bool sample_witness(FEval&& f, bool minus_domain, double n1_over_m,
                    double& wx, double& wy) {
    const int grid = 64;
    for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j) {
            double x = (double)i / grid, y = (double)j / grid;
            if (x == 0 && y == 0) continue;
            if (minus_domain && y > std::pow(x, n1_over_m)) continue;
            if (!(f(x, y) > 0)) {
                wx = x;
                wy = y;
                return true;
            }
        }
    return false;
}

inline void merge_certificates(PositivityReport& rep,
                               std::initializer_list<const Poly2*> polys,
                               const PositivityConfig& pcfg) {
    for (const Poly2* p : polys) {
        auto r = detail::certify_positive_square(*p, pcfg);
        rep.cells += r.cells_checked;
        if (r.status == PositivityResult::Status::Counterexample) {
            // a transformed-integrand zero; report inconclusive for the model
            // domain with the transformed witness recorded
            rep.positive = false;
            rep.inconclusive = false;
            rep.witness_x = r.witness_x;
            rep.witness_y = r.witness_y;
            return;
        }
        if (r.status == PositivityResult::Status::Unknown) rep.inconclusive = true;
    }
    rep.positive = !rep.inconclusive;
}

} // namespace detail

inline PositivityReport check_positivity(const PlusModel& model,
                                         const PositivityConfig& pcfg = {}) {
    PositivityReport rep;
    Poly2 f = model.f();
    double wx, wy;
    if (detail::sample_witness([&](double x, double y) { return f.evaluate<double>(x, y); },
                               false, 0, wx, wy)) {
        rep.positive = false;
        rep.witness_x = wx;
        rep.witness_y = wy;
        return rep;
    }
    const auto& cc = model.cc;
    Poly2 ft = f.substitute_monomials(cc.m, 0, 0, cc.n1);
    Poly2 f1 = ft.substitute_monomials(1, 0, 1, 1).divide_monomial(cc.m * cc.n1 * cc.n2, 0);
    Poly2 f2 = ft.substitute_monomials(1, 1, 0, 1).divide_monomial(0, cc.m * cc.n1 * cc.n2);
    detail::merge_certificates(rep, {&f1, &f2}, pcfg);
    return rep;
}

inline PositivityReport check_positivity(const MinusModel& model,
                                         const PositivityConfig& pcfg = {}) {
    PositivityReport rep;
    Poly2 f = model.f();
    double wx, wy;
    if (detail::sample_witness([&](double x, double y) { return f.evaluate<double>(x, y); },
                               true, (double)model.cc.n1 / (double)model.cc.m, wx, wy)) {
        rep.positive = false;
        rep.witness_x = wx;
        rep.witness_y = wy;
        return rep;
    }
    auto h = transform_minus(model, 1, 1, 0, Rat(-(model.cc.m + model.cc.n1) * model.cc.n2 - model.cc.q,
                                                 model.cc.n2 * model.cc.D()));
    detail::merge_certificates(rep, {&h.F1, &h.F2}, pcfg);
    return rep;
}

// ---------------------------------------------------------------------------
// Verification reports: measured residue vs the Beta closed form.
struct BetaExpr {
    Rat prefactor;          // rational multiplier
    Rat mn1_power;          // exponent on (m n1); 0 when absent
    Rat arg1, arg2;         // Beta arguments
};

struct AdjudicationEntry {
    std::string name;
    double value = 0;
    double rel_error = 0;
};

struct ResidueReport {
    Rat alpha;
    Family family = Family::A11;
    Witness witness;
    double measured = 0;
    double closed_form = 0;
    double rel_error = 0;
    BetaExpr symbolic;
    bool arg1_nonintegral = false, arg2_nonintegral = false, sum_nonintegral = false;
    std::vector<AdjudicationEntry> adjudication;   // alternative constants
    std::string matched;                           // best-matching constant
    std::string config_fingerprint;
};

namespace detail {

template <class R>
R beta_value(const Rat& a1, const Rat& a2) {
    return beta_function(from_rat<R>(a1), from_rat<R>(a2));
}

// rel_error is taken in working precision before the double rounding of the
// report fields, so exact agreement still leaves a nonzero floor.
template <class R>
void set_measured_closed(ResidueReport& rep, const R& measured, const R& closed) {
    rep.measured = to_double(measured);
    rep.closed_form = to_double(closed);
    R denom = r_abs(closed);
    if (!(denom > R(0))) denom = R(1e-300);
    rep.rel_error = to_double(R(r_abs(R(measured - closed)) / denom));
}

inline void finish_report(ResidueReport& rep, double tol) {
    double best = 4e-2;   // adjudication threshold
    for (auto& e : rep.adjudication) {
        if (e.rel_error == 0)
            e.rel_error = std::abs(rep.measured - e.value) /
                          std::max(1e-300, std::abs(e.value));
        if (e.rel_error < best) {
            best = e.rel_error;
            rep.matched = e.name;
        }
    }
    if (rep.matched.empty())
        rep.matched = rep.adjudication.empty() && rep.rel_error < 4e-2
                          ? "closed form"
                          : "none";
    (void)tol;
}

template <class R>
AdjudicationEntry adjudicated(const std::string& name, const R& value, const R& measured) {
    R denom = r_abs(value);
    if (!(denom > R(0))) denom = R(1e-300);
    return {name, to_double(value), to_double(R(r_abs(R(measured - value)) / denom))};
}

} // namespace detail

// Simple-pole residue at an A11 root: closed form B(b1/n1, b2/m)/(m n1 n2).
template <class R>
ResidueReport verify_A11(const PlusModel& model, const CandidateRoot& root,
                         const QuadratureConfig& cfg) {
    if (root.family != Family::A11) throw Error("verify_A11: wrong family");
    const auto w = std::get<WitnessA11>(root.witness);
    const auto& cc = model.cc;
    auto handles = transform_plus(model, w.b1, w.b2);
    ResidueReport rep;
    rep.alpha = root.value;
    rep.family = root.family;
    rep.witness = root.witness;
    const R measured = plus_residue<R>(handles, root.value, cfg);
    rep.symbolic = {Rat(1, cc.m * cc.n1 * cc.n2), Rat(0), Rat(w.b1, cc.n1), Rat(w.b2, cc.m)};
    const R closed = from_rat<R>(rep.symbolic.prefactor) *
                     detail::beta_value<R>(rep.symbolic.arg1, rep.symbolic.arg2);
    detail::set_measured_closed(rep, measured, closed);
    rep.arg1_nonintegral = !rep.symbolic.arg1.is_integer();
    rep.arg2_nonintegral = !rep.symbolic.arg2.is_integer();
    rep.sum_nonintegral = !(rep.symbolic.arg1 + rep.symbolic.arg2).is_integer();
    rep.config_fingerprint = config_fingerprint(cfg);
    detail::finish_report(rep, cfg.rel_tol);
    return rep;
}

// A12: residue of I(f_{+t},1,1) is affine in t; slope from two t samples,
// compared against the closed-form candidates alpha/(n2 n1 m) * B and its
// n2 multiple (a chain-rule factor the former misses).
template <class R>
ResidueReport verify_A12_slope(const PlusModel& base, const CandidateRoot& root,
                               const QuadratureConfig& cfg) {
    if (root.family != Family::A12) throw Error("verify_A12_slope: wrong family");
    const auto w = std::get<WitnessA12>(root.witness);
    const auto& cc = base.cc;
    auto residue_at = [&](const Rat& t) {
        PlusModel m = base;
        m.deformation = w;
        m.t = t;
        auto handles = transform_plus(m, 1, 1);
        return plus_residue<R>(handles, root.value, cfg);
    };
    const R r_half = residue_at(Rat(1, 2));
    const R r_one = residue_at(Rat(1));
    const R slope = 2 * (r_one - r_half);

    ResidueReport rep;
    rep.alpha = root.value;
    rep.family = root.family;
    rep.witness = root.witness;
    rep.symbolic = {root.value / Rat(cc.n2 * cc.n1 * cc.m), Rat(0),
                    Rat(1 + w.i0, cc.n1), Rat(1 + w.j0, cc.m)};
    const R B = detail::beta_value<R>(rep.symbolic.arg1, rep.symbolic.arg2);
    const R reference = from_rat<R>(rep.symbolic.prefactor) * B;
    detail::set_measured_closed(rep, slope, reference);
    rep.adjudication.push_back(detail::adjudicated<R>("alpha/(n2 n1 m) B", reference, slope));
    rep.adjudication.push_back(
        detail::adjudicated<R>("alpha/(n1 m) B", R(R(cc.n2) * reference), slope));
    rep.arg1_nonintegral = !rep.symbolic.arg1.is_integer();
    rep.arg2_nonintegral = !rep.symbolic.arg2.is_integer();
    rep.sum_nonintegral = !(-root.value * Rat(cc.n2) - Rat(1)).is_integer();
    rep.config_fingerprint = config_fingerprint(cfg);
    detail::finish_report(rep, cfg.rel_tol);
    return rep;
}

// A21: closed form B((b3+1)/n2, -alpha-(b3+1)/n2)/(n2 D), adjudicated
// against its (m n1)^{-b3} and (-1)^{b3} variants.
template <class R>
ResidueReport verify_A21(const MinusModel& model, const CandidateRoot& root,
                         const QuadratureConfig& cfg) {
    if (root.family != Family::A21) throw Error("verify_A21: wrong family");
    const auto w = std::get<WitnessA21>(root.witness);
    const auto& cc = model.cc;
    auto handles = transform_minus(model, w.b1, w.b2, w.b3, root.value);
    ResidueReport rep;
    rep.alpha = root.value;
    rep.family = root.family;
    rep.witness = root.witness;
    const R measured = minus_residue<R>(handles, root.value, cfg);
    rep.symbolic = {Rat(1, cc.n2 * cc.D()), Rat(0), Rat(w.b3 + 1, cc.n2),
                    -root.value - Rat(w.b3 + 1, cc.n2)};
    const R B = detail::beta_value<R>(rep.symbolic.arg1, rep.symbolic.arg2);
    const R reference = from_rat<R>(rep.symbolic.prefactor) * B;
    detail::set_measured_closed(rep, measured, reference);
    const R mpow = r_pow(R(cc.m * cc.n1), R(-w.b3));
    const R spow = (w.b3 % 2 == 0) ? R(1) : R(-1);
    rep.adjudication.push_back(detail::adjudicated<R>("B/(n2 D)", reference, measured));
    rep.adjudication.push_back(
        detail::adjudicated<R>("(m n1)^-b3 B/(n2 D)", R(mpow * reference), measured));
    rep.adjudication.push_back(
        detail::adjudicated<R>("(-1)^b3 B/(n2 D)", R(spow * reference), measured));
    rep.arg1_nonintegral = !rep.symbolic.arg1.is_integer();
    rep.arg2_nonintegral = !rep.symbolic.arg2.is_integer();
    rep.sum_nonintegral = !(rep.symbolic.arg1 + rep.symbolic.arg2).is_integer();
    rep.config_fingerprint = config_fingerprint(cfg);
    detail::finish_report(rep, cfg.rel_tol);
    return rep;
}

// A22: slope in t of the residue of I(f_{-t},1,1,0); the (m n1)-power in the
// closed form is under numeric adjudication across the candidate exponents.
template <class R>
ResidueReport verify_A22_slope(const MinusModel& base, const CandidateRoot& root,
                               const QuadratureConfig& cfg) {
    if (root.family != Family::A22) throw Error("verify_A22_slope: wrong family");
    const auto w = std::get<WitnessA22>(root.witness);
    const auto& cc = base.cc;
    auto residue_at = [&](const Rat& t) {
        MinusModel m = base;
        m.deformation = w;
        m.t = t;
        auto handles = transform_minus(m, 1, 1, 0, root.value);
        return minus_residue<R>(handles, root.value, cfg);
    };
    const R r_half = residue_at(Rat(1, 2));
    const R r_one = residue_at(Rat(1));
    const R slope = 2 * (r_one - r_half);

    ResidueReport rep;
    rep.alpha = root.value;
    rep.family = root.family;
    rep.witness = root.witness;
    const Rat head_power = Rat(1) - Rat(w.l * (w.l + 1), cc.n2);
    rep.symbolic = {root.value / Rat(cc.n2 * cc.D()), head_power, Rat(w.l + 1, cc.n2),
                    -root.value + Rat(1) - Rat(w.l + 1, cc.n2)};
    const R B = detail::beta_value<R>(rep.symbolic.arg1, rep.symbolic.arg2);
    const R mn1 = R(cc.m * cc.n1);
    auto with_power = [&](const Rat& p) -> R {
        return from_rat<R>(rep.symbolic.prefactor) * r_pow(mn1, from_rat<R>(p)) * B;
    };
    detail::set_measured_closed(rep, slope, with_power(head_power));
    rep.adjudication.push_back(detail::adjudicated<R>("(m n1)^(1-l(l+1)/n2)",
                                                      with_power(head_power), slope));
    rep.adjudication.push_back(detail::adjudicated<R>(
        "(m n1)^(-l(l+1)/n2)", with_power(head_power - Rat(1)), slope));
    rep.adjudication.push_back(
        detail::adjudicated<R>("(m n1)^0", with_power(Rat(0)), slope));
    rep.adjudication.push_back(
        detail::adjudicated<R>("(m n1)^-1", with_power(Rat(-1)), slope));
    rep.arg1_nonintegral = !rep.symbolic.arg1.is_integer();
    rep.arg2_nonintegral = !rep.symbolic.arg2.is_integer();
    rep.sum_nonintegral = !(rep.symbolic.arg1 + rep.symbolic.arg2).is_integer();
    rep.config_fingerprint = config_fingerprint(cfg);
    detail::finish_report(rep, cfg.rel_tol);
    return rep;
}

} // namespace yano
