#pragma once

#include <array>

#include "spinforms/bessel.hpp"
#include "spinforms/clebsch.hpp"
#include "spinforms/exterior.hpp"
#include "spinforms/wigner.hpp"

namespace spinforms {

struct MonopoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Form-level su(2) actions on the Killing-Cartan sphere
// ---------------------------------------------------------------------------

/// Lie derivative along the right-invariant field L_a: the generator of the
/// left action, expanded in the left-invariant frame.
inline DifferentialForm lie_along_right_field(int axis, const DifferentialForm& alpha) {
    const auto& M = alpha.manifold();
    auto weights = right_invariant_weights(M->vars(), axis);
    std::vector<Polynomial> w(weights.begin(), weights.end());
    return lie_derivative(w, alpha);
}

inline DifferentialForm apply_operator_form(SU2Operator op, const DifferentialForm& alpha) {
    switch (op) {
        case SU2Operator::casimir: {
            DifferentialForm out(alpha.manifold());
            for (int a = 1; a <= 3; ++a) out = out + lie_along_right_field(a, lie_along_right_field(a, alpha));
            return out;
        }
        case SU2Operator::lz: return lie_along_right_field(3, alpha);
        case SU2Operator::x3: {
            int fiber = alpha.manifold()->frame_index("th3");
            if (fiber < 0) throw MonopoleError("manifold has no fiber direction th3");
            return lie_derivative(fiber, alpha);
        }
        case SU2Operator::constraint: {
            const auto& M = alpha.manifold();
            auto xhat = hopf_projection(M->vars());
            DifferentialForm out(M);
            for (int a = 1; a <= 3; ++a) out = out + xhat[a - 1] * lie_along_right_field(a, alpha);
            return out;
        }
    }
    throw MonopoleError("unknown operator");
}

namespace detail {
inline double max_form_coefficient(const DifferentialForm& f) {
    double m = 0.0;
    for (const auto& [mask, p] : f.components()) m = std::max(m, max_coefficient(p));
    return m;
}
}  // namespace detail

inline EigenReport eigen_check_form(const DifferentialForm& alpha, SU2Operator op, const Scalar& lambda) {
    DifferentialForm residual = apply_operator_form(op, alpha) - lambda * alpha;
    EigenReport rep;
    rep.operator_label = operator_label(op);
    rep.eigenvalue = lambda;
    rep.exact = residual.is_zero();
    rep.residual = rep.exact ? 0.0 : detail::max_form_coefficient(residual);
    return rep;
}

/// Horizontality on the bundle: contraction with the fiber generator vanishes
/// and the form is fiber-invariant; such forms descend to the base sphere.
struct HorizontalityReport {
    bool contraction_vanishes = false;
    bool fiber_invariant = false;
    bool horizontal() const { return contraction_vanishes && fiber_invariant; }
};

inline HorizontalityReport horizontal_forms_check(const DifferentialForm& alpha) {
    int fiber = alpha.manifold()->frame_index("th3");
    if (fiber < 0) throw MonopoleError("horizontal_forms_check expects the SU(2) frame");
    HorizontalityReport rep;
    rep.contraction_vanishes = contract(fiber, alpha).is_zero();
    rep.fiber_invariant = lie_derivative(fiber, alpha).is_zero();
    return rep;
}

// ---------------------------------------------------------------------------
// Vector-valued harmonics
// ---------------------------------------------------------------------------

/// A one-form eigenvector of {L^2, L_z} with fiber charge n. The form itself
/// carries exact coefficients; norm_constant is the printed normalization
/// (irrational, involving pi) kept separate so the algebra stays exact.
struct VectorHarmonic {
    HalfInt j, m, n;
    DifferentialForm form;
    double norm_constant = 1.0;
};

namespace detail {
/// The coordinate differentials as forms: d(f) for f in {u, v, ub, vb}.
inline DifferentialForm coordinate_differential(const std::shared_ptr<const FrameManifold>& M,
                                                const char* name) {
    return exterior_derivative(DifferentialForm::from_function(M, Polynomial::variable(M->vars(), name)));
}
}  // namespace detail

/**
 * The j=1 triple of fiber-invariant horizontal one-forms,
 *   alpha_1  ~ i [ v^2 (vb dub - ub dvb) + ub^2 (u dv - v du) ]
 *   alpha_0  ~ i [ -v u (vb dub - ub dvb) + vb ub (u dv - v du) ]
 *   alpha_-1 ~ i [ u^2 (vb dub - ub dvb) + vb^2 (u dv - v du) ]
 * with norm constants (1/sqrt(pi)) sqrt(3/(8 pi)) (outer) and
 * (1/sqrt(pi)) sqrt(3/(4 pi)) (middle).
 */
inline std::array<VectorHarmonic, 3> j1_basis() {
    auto M = FrameManifold::su2_killing();
    const auto& vars = M->vars();
    auto V = [&](const char* n) { return Polynomial::variable(vars, n).normal_form(); };
    Scalar i = Scalar::imaginary_unit();

    DifferentialForm du = detail::coordinate_differential(M, "u");
    DifferentialForm dv = detail::coordinate_differential(M, "v");
    DifferentialForm dub = detail::coordinate_differential(M, "ub");
    DifferentialForm dvb = detail::coordinate_differential(M, "vb");
    DifferentialForm anti = V("vb") * dub - V("ub") * dvb;  // vb dub - ub dvb
    DifferentialForm holo = V("u") * dv - V("v") * du;      // u dv - v du

    const double pi = 3.14159265358979323846;
    std::array<VectorHarmonic, 3> out;
    out[0] = VectorHarmonic{HalfInt(1), HalfInt(1), HalfInt(0),
                            i * (V("v") * V("v") * anti + V("ub") * V("ub") * holo),
                            std::sqrt(3.0 / (8.0 * pi)) / std::sqrt(pi)};
    out[1] = VectorHarmonic{HalfInt(1), HalfInt(0), HalfInt(0),
                            i * (Scalar(-1) * (V("v") * V("u")) * anti + (V("vb") * V("ub")) * holo),
                            std::sqrt(3.0 / (4.0 * pi)) / std::sqrt(pi)};
    out[2] = VectorHarmonic{HalfInt(1), HalfInt(-1), HalfInt(0),
                            i * (V("u") * V("u") * anti + V("vb") * V("vb") * holo),
                            std::sqrt(3.0 / (8.0 * pi)) / std::sqrt(pi)};
    return out;
}

/// theta^+- = (theta^1 -+ i theta^2)/sqrt(2) as forms.
inline DifferentialForm theta_plus(const std::shared_ptr<const FrameManifold>& M) {
    Scalar inv_sqrt2 = Scalar(1) / Scalar(2).sqrt();
    return inv_sqrt2 * (DifferentialForm::frame_form(M, {0}) +
                        Scalar(BigRat(0), BigRat(-1)) * DifferentialForm::frame_form(M, {1}));
}
inline DifferentialForm theta_minus(const std::shared_ptr<const FrameManifold>& M) {
    Scalar inv_sqrt2 = Scalar(1) / Scalar(2).sqrt();
    return inv_sqrt2 * (DifferentialForm::frame_form(M, {0}) +
                        Scalar(BigRat(0), BigRat(1)) * DifferentialForm::frame_form(M, {1}));
}

/**
 * The j=1/2 pair of equivariant horizontal one-forms with fiber charge
 * n = 1/2: alpha_{1/2} ~ v theta^+, alpha_{-1/2} ~ -u theta^+, printed
 * normalization 1/(2 pi).
 */
inline std::array<VectorHarmonic, 2> half_basis() {
    auto M = FrameManifold::su2_killing();
    const auto& vars = M->vars();
    const double pi = 3.14159265358979323846;
    DifferentialForm tp = theta_plus(M);
    HalfInt half = HalfInt::from_twice(1);
    std::array<VectorHarmonic, 2> out;
    out[0] = VectorHarmonic{half, half, half, Polynomial::variable(vars, "v").normal_form() * tp,
                            1.0 / (2.0 * pi)};
    out[1] = VectorHarmonic{half, -half, half,
                            Scalar(-1) * (Polynomial::variable(vars, "u").normal_form() * tp), 1.0 / (2.0 * pi)};
    return out;
}

/**
 * l = 1 spherical harmonics as fiber-invariant polynomials through the bundle
 * projection, exact parts only:
 *   Y_1^{+1} ~ -(xhat_1 + i xhat_2)/sqrt(2),  Y_1^0 ~ xhat_3,
 *   Y_1^{-1} ~ +(xhat_1 - i xhat_2)/sqrt(2),
 * sharing the single printed constant sqrt(3/(4 pi)).
 */
struct SphericalHarmonic {
    HalfInt m;
    Polynomial poly;
    double norm_constant;
};

inline std::array<SphericalHarmonic, 3> spherical_harmonics_l1() {
    const auto& vars = VariableSet::su2();
    auto xhat = hopf_projection(vars);
    Scalar i = Scalar::imaginary_unit();
    Scalar inv_sqrt2 = Scalar(1) / Scalar(2).sqrt();
    const double pi = 3.14159265358979323846;
    double nc = std::sqrt(3.0 / (4.0 * pi));
    return {
        SphericalHarmonic{HalfInt(1), Scalar(-1) * inv_sqrt2 * (xhat[0] + i * xhat[1]), nc},
        SphericalHarmonic{HalfInt(0), xhat[2], nc},
        SphericalHarmonic{HalfInt(-1), inv_sqrt2 * (xhat[0] + Scalar(-1) * i * xhat[1]), nc},
    };
}

/**
 * Clebsch-Gordan tower: combines spherical harmonics (spin j1) with a form
 * basis (spin j2, aligned fiber charge) into eigenforms of target spin j.
 * Entries of both inputs are ordered by descending m.
 */
inline std::vector<VectorHarmonic> cg_combine(const std::vector<VectorHarmonic>& forms,
                                              const std::vector<SphericalHarmonic>& harmonics,
                                              HalfInt j_target) {
    if (forms.empty() || harmonics.empty()) throw MonopoleError("cg_combine: empty inputs");
    HalfInt j2 = forms.front().j;
    HalfInt j1 = HalfInt::from_twice(static_cast<int>(harmonics.size()) - 1);
    if (j_target > j1 + j2 || j_target < (j1 - j2).abs())
        throw MonopoleError("cg_combine: target spin outside the decomposition");

    auto form_at = [&](HalfInt m) -> const VectorHarmonic* {
        for (const auto& f : forms)
            if (f.m == m) return &f;
        return nullptr;
    };
    auto harm_at = [&](HalfInt m) -> const SphericalHarmonic* {
        for (const auto& h : harmonics)
            if (h.m == m) return &h;
        return nullptr;
    };

    std::vector<VectorHarmonic> out;
    for (HalfInt m = j_target;; m = m - HalfInt::from_twice(2)) {
        VectorHarmonic combo;
        combo.j = j_target;
        combo.m = m;
        combo.n = forms.front().n;
        DifferentialForm total(forms.front().form.manifold());
        double norm_product = 0.0;
        for (HalfInt m1 = j1;; m1 = m1 - HalfInt::from_twice(2)) {
            HalfInt m2 = m - m1;
            const auto* h = harm_at(m1);
            const auto* f = (m2.abs() <= j2) ? form_at(m2) : nullptr;
            if (h && f) {
                Scalar cg = clebsch_gordan(j1, j2, m1, m2, j_target, m);
                if (!cg.is_zero()) {
                    total = total + (cg * h->poly) * f->form;
                    norm_product = h->norm_constant * f->norm_constant;
                }
            }
            if (m1 == -j1) break;
        }
        combo.form = total;
        combo.norm_constant = norm_product;
        out.push_back(std::move(combo));
        if (m == -j_target) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equivariant reduction of the geometric Hamiltonian
// ---------------------------------------------------------------------------

/**
 * Applies the geometric Laplacian of the monopole metric (div grad, the
 * negative of the Hodge Laplacian on functions) to an equivariant function and
 * reports the residual against the independently assembled reduced operator
 *   d_r^2 + (2/r) d_r + (X_1^2 + X_2^2)/r^2 + X_3^2/k.
 */
struct ReducedHamiltonianResult {
    Polynomial applied;  // div grad psi
    EigenReport report;  // residual of the cross-check, exact when zero
};

inline ReducedHamiltonianResult reduced_hamiltonian_apply(const Polynomial& psi, const Scalar& k, HalfInt n) {
    auto M = FrameManifold::r4_monopole(k);
    const auto& vars = M->vars();
    check_same(psi.vars(), vars);

    Scalar in = Scalar::imaginary_unit() * n.scalar();
    Polynomial equiv_res = su2_left_invariant_field(vars, 3).apply(psi) - in * psi;
    if (!equiv_res.is_zero()) throw MonopoleError("reduced_hamiltonian_apply: input is not n-equivariant");

    DifferentialForm f = DifferentialForm::from_function(M, psi);
    Polynomial divgrad = -laplace_beltrami(f).component(0u);

    // Independent route: first-order assembly from the frame fields.
    Polynomial reference = Polynomial::zero(vars);
    const Derivation& ddr = M->frame_action(0);
    reference += ddr.apply(ddr.apply(psi));
    Monomial rinv(vars->size(), 0);
    rinv[vars->index_of("r")] = -1;
    reference += Polynomial::monomial(vars, rinv, Scalar(2)) * ddr.apply(psi);
    Monomial rinv2(vars->size(), 0);
    rinv2[vars->index_of("r")] = -2;
    Polynomial angular = Polynomial::zero(vars);
    for (int a = 1; a <= 2; ++a) {
        Derivation X = su2_left_invariant_field(vars, a);
        angular += X.apply(X.apply(psi));
    }
    reference += Polynomial::monomial(vars, rinv2, Scalar(1)) * angular;
    Derivation X3 = su2_left_invariant_field(vars, 3);
    reference += (Scalar(1) / k) * X3.apply(X3.apply(psi));

    Polynomial residual = divgrad - reference;
    ReducedHamiltonianResult out;
    out.applied = divgrad;
    out.report.operator_label = "monopole_laplacian(k=" + k.to_string() + ")";
    out.report.exact = residual.is_zero();
    out.report.residual = out.report.exact ? 0.0 : detail::max_coefficient(residual);
    return out;
}

/**
 * Angular decomposition of the reduced Hamiltonian H = -div grad on a
 * radially constant equivariant eigenfunction:
 *   H psi = [c2 / r^2 + c0] psi.
 * The constant part c0 is the spectral shift; it equals n^2 / k.
 */
struct AngularDecomposition {
    Scalar inverse_r2_coefficient;  // c2
    Scalar constant_shift;          // c0
    bool exact = false;
};

inline AngularDecomposition reduced_hamiltonian_shift(const Polynomial& psi_su2, const Scalar& k, HalfInt n) {
    // Transplant the SU(2) polynomial onto the monopole variable set.
    auto vars = VariableSet::monopole4();
    Polynomial psi = Polynomial::zero(vars);
    for (const auto& [m, c] : psi_su2.terms()) {
        Monomial mm(vars->size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            mm[vars->index_of(psi_su2.vars()->name(i))] = m[i];
        psi += Polynomial::monomial(vars, mm, c);
    }
    auto result = reduced_hamiltonian_apply(psi, k, n);
    Polynomial h_psi = -result.applied;

    Monomial rinv2(vars->size(), 0);
    rinv2[vars->index_of("r")] = -2;
    Polynomial r_m2 = Polynomial::monomial(vars, rinv2, Scalar(1));

    // Solve H psi = c2 r^-2 psi + c0 psi by matching a leading monomial.
    const auto& [mono, coeff] = *psi.terms().begin();
    Monomial shifted = mono;
    shifted[vars->index_of("r")] -= 2;
    AngularDecomposition dec;
    dec.inverse_r2_coefficient = h_psi.coefficient(shifted) / coeff;
    dec.constant_shift = h_psi.coefficient(mono) / coeff;
    Polynomial residual = h_psi - dec.inverse_r2_coefficient * (r_m2 * psi) - dec.constant_shift * psi;
    dec.exact = residual.is_zero() && result.report.exact;
    return dec;
}

}  // namespace spinforms
