#pragma once

#include <optional>
#include <vector>

#include "spinforms/frames.hpp"
#include "spinforms/halfint.hpp"

namespace spinforms {

struct WignerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The commuting operator set diagonalized by the Wigner basis.
enum class SU2Operator {
    casimir,     // L^2 = sum_a L_a L_a (equals sum_a X_a X_a)
    lz,          // L_3
    x3,          // X_3, the fiber generator
    constraint,  // xhat^a L_a
};

inline const char* operator_label(SU2Operator op) {
    switch (op) {
        case SU2Operator::casimir: return "L2";
        case SU2Operator::lz: return "Lz";
        case SU2Operator::x3: return "X3";
        case SU2Operator::constraint: return "xhat.L";
    }
    return "?";
}

inline Polynomial apply_operator(SU2Operator op, const Polynomial& p) {
    const auto& vars = p.vars();
    switch (op) {
        case SU2Operator::casimir: {
            Polynomial out = Polynomial::zero(vars);
            for (int a = 1; a <= 3; ++a) {
                Derivation L = su2_right_invariant_field(vars, a);
                out += L.apply(L.apply(p));
            }
            return out;
        }
        case SU2Operator::lz: return su2_right_invariant_field(vars, 3).apply(p);
        case SU2Operator::x3: return su2_left_invariant_field(vars, 3).apply(p);
        case SU2Operator::constraint: return hopf_constraint_field(vars).apply(p);
    }
    throw WignerError("unknown operator");
}

/// Uniform verification record for (Op - lambda) psi.
struct EigenReport {
    std::string operator_label;
    Scalar eigenvalue;
    double residual = 0.0;
    bool exact = false;
};

namespace detail {
inline double max_coefficient(const Polynomial& p) {
    double m = 0.0;
    for (const auto& [mono, c] : p.terms()) m = std::max(m, std::abs(c.to_complex()));
    return m;
}
}  // namespace detail

inline EigenReport eigen_check(const Polynomial& psi, SU2Operator op, const Scalar& lambda) {
    Polynomial residual = apply_operator(op, psi) - lambda * psi;
    EigenReport rep;
    rep.operator_label = operator_label(op);
    rep.eigenvalue = lambda;
    rep.exact = residual.is_zero();
    rep.residual = rep.exact ? 0.0 : detail::max_coefficient(residual);
    return rep;
}

/// Measures Op psi = lambda psi; nullopt if psi is not an eigenvector.
inline std::optional<Scalar> measure_eigenvalue(const Polynomial& psi, SU2Operator op) {
    if (psi.is_zero()) return std::nullopt;
    Polynomial image = apply_operator(op, psi);
    if (image.is_zero()) return Scalar();
    const auto& [mono, coeff] = *psi.terms().begin();
    Scalar ic = image.coefficient(mono);
    if (ic.is_zero()) return std::nullopt;
    Scalar lambda = ic / coeff;
    return (image == lambda * psi) ? std::optional<Scalar>(lambda) : std::nullopt;
}

/**
 * Simultaneous eigenfunction of {L^2, L_3, X_3}: a homogeneous polynomial of
 * degree 2j with measured labels n (fiber charge, X_3 psi = i n psi) and m
 * (L_3 psi = i m psi). norm_sq records the exact Haar norm; the basis is
 * scaled so that norm_sq = 1/(2j+1), the Peter-Weyl value for the
 * mass-one Haar measure.
 */
struct WignerBasisElement {
    HalfInt j, n, m;
    Polynomial poly;
    BigRat norm_sq;
};

/**
 * All (2j+1)^2 elements, generated from ubar^{2j} (which carries n = m = j) by
 * the two commuting lowering ladders, then normalized. Labels are measured
 * from the operators, never assumed.
 */
inline std::vector<WignerBasisElement> wigner_basis(HalfInt j) {
    if (j < HalfInt(0)) throw WignerError("wigner_basis: j must be non-negative");
    const auto& vars = VariableSet::su2();
    Scalar i = Scalar::imaginary_unit();

    Derivation X1 = su2_left_invariant_field(vars, 1), X2 = su2_left_invariant_field(vars, 2);
    Derivation L1 = su2_right_invariant_field(vars, 1), L2 = su2_right_invariant_field(vars, 2);
    // X_+ = X_1 + i X_2 lowers n; L_- = L_1 - i L_2 lowers m (calibrated ladders).
    Derivation Xplus = X1 + i * X2;
    Derivation Lminus = L1 + (-i) * L2;

    Polynomial top = Polynomial::one(vars);
    Polynomial ub = Polynomial::variable(vars, "ub");
    for (int k = 0; k < j.twice(); ++k) top *= ub;

    std::vector<WignerBasisElement> out;
    Polynomial n_level = top;
    for (HalfInt n = j;; n = n - HalfInt::from_twice(2)) {
        Polynomial elem = n_level;
        for (HalfInt m = j;; m = m - HalfInt::from_twice(2)) {
            if (elem.is_zero()) throw WignerError("ladder collapsed early");
            Scalar norm = haar_integral(elem.conjugate() * elem);
            BigRat target(1, j.twice() + 1);
            Scalar scale = (Scalar(target) / norm).sqrt();
            WignerBasisElement w;
            w.j = j;
            w.poly = scale * elem;
            w.norm_sq = target;
            auto nval = measure_eigenvalue(w.poly, SU2Operator::x3);
            auto mval = measure_eigenvalue(w.poly, SU2Operator::lz);
            if (!nval || !mval) throw WignerError("ladder element is not a weight vector");
            w.n = HalfInt::from_twice(static_cast<int>(std::lround(2 * ((*nval) / i).real_approx())));
            w.m = HalfInt::from_twice(static_cast<int>(std::lround(2 * ((*mval) / i).real_approx())));
            out.push_back(std::move(w));
            if (m == -j) break;
            elem = Lminus.apply(elem);
        }
        if (n == -j) break;
        n_level = Xplus.apply(n_level);
    }
    return out;
}

/// Elements with fiber charge n: X_3 psi = i n psi.
inline std::vector<WignerBasisElement> equivariant_subspace(const std::vector<WignerBasisElement>& elements,
                                                            HalfInt n) {
    std::vector<WignerBasisElement> out;
    for (const auto& w : elements)
        if (w.n == n) out.push_back(w);
    return out;
}

}  // namespace spinforms
