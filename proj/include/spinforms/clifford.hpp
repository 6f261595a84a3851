#pragma once

#include <optional>

#include "spinforms/exterior.hpp"
#include "spinforms/matrix.hpp"

namespace spinforms {

struct CliffordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Metric data for the vee product: the manifold plus the inverse diagonal.
struct CliffordContext {
    std::shared_ptr<const FrameManifold> manifold;
    std::vector<Polynomial> inverse_metric_diag;

    static CliffordContext for_manifold(std::shared_ptr<const FrameManifold> m) {
        CliffordContext ctx;
        for (int a = 0; a < m->dim(); ++a) ctx.inverse_metric_diag.push_back(m->inverse_metric_entry(a));
        ctx.manifold = std::move(m);
        return ctx;
    }
};

namespace detail {
/// gamma^s: multiplies the degree-k component by (-1)^{k s}.
inline DifferentialForm grade_sign_power(const DifferentialForm& a, int s) {
    if (s % 2 == 0) return a;
    DifferentialForm out(a.manifold());
    for (const auto& [m, f] : a.components()) {
        int k = std::popcount(m);
        out.add_component(m, (k % 2 == 0) ? f : -f);
    }
    return out;
}
}  // namespace detail

/**
 * The Clifford (vee) product on the exterior algebra: for each contraction
 * set S = {a_1 < ... < a_s},
 *   (-1)^{C(s,2)} (prod g^{aa}) (gamma^s i_S phi) ^ (i_S psi),
 * summed over all S, where i_S applies the frame contractions in a fixed
 * order to both factors. The s = 0 term is the wedge.
 */
inline DifferentialForm vee(const DifferentialForm& phi, const DifferentialForm& psi,
                            const CliffordContext& ctx) {
    phi.check_manifold(psi);
    if (!phi.manifold()->same_as(*ctx.manifold)) throw ManifoldMismatch("context manifold mismatch");
    int n = ctx.manifold->dim();
    DifferentialForm out(ctx.manifold);
    for (std::uint32_t S = 0; S < (1u << n); ++S) {
        int s = std::popcount(S);
        DifferentialForm left = phi, right = psi;
        Polynomial metric = Polynomial::one(ctx.manifold->vars());
        for (int a = 0; a < n; ++a) {
            if (!(S & (1u << a))) continue;
            left = contract(a, left);
            right = contract(a, right);
            metric *= ctx.inverse_metric_diag[a];
        }
        if (left.is_zero() || right.is_zero()) continue;
        left = detail::grade_sign_power(left, s);
        int binom_sign = ((s * (s - 1) / 2) % 2 == 0) ? 1 : -1;
        out = out + Scalar(binom_sign) * (metric * wedge(left, right));
    }
    return out;
}

struct IdempotencyReport {
    bool idempotent = false;
    double residual = 0.0;  // max |coefficient| of P vee P - P (0 when exact)
};

inline IdempotencyReport is_idempotent(const DifferentialForm& P, const CliffordContext& ctx) {
    DifferentialForm diff = vee(P, P, ctx) - P;
    IdempotencyReport rep;
    rep.idempotent = diff.is_zero();
    double res = 0.0;
    for (const auto& [m, f] : diff.components())
        for (const auto& [mono, c] : f.terms()) res = std::max(res, std::abs(c.to_complex()));
    rep.residual = res;
    return rep;
}

/// P(xi) = 1/2 + rho dx + xi dx^dy over Euclidean R^3, rho = +sqrt(xi^2 + 1/4).
inline DifferentialForm projector_family(const Scalar& xi, std::shared_ptr<const FrameManifold> m) {
    if (!xi.is_real() || xi.real_approx() < 0.0) throw CliffordError("projector_family: xi must be >= 0");
    Scalar rho = (xi * xi + Scalar(BigRat(1, 4))).sqrt();
    DifferentialForm P(m);
    P.set_component(0u, Polynomial::constant(m->vars(), Scalar(BigRat(1, 2))));
    P.set_component(0b001u, Polynomial::constant(m->vars(), rho));
    if (!xi.is_zero()) P.set_component(0b011u, Polynomial::constant(m->vars(), xi));
    return P;
}

/// Basis of a minimal left ideal, closed under vee-left-multiplication.
struct LeftIdeal {
    DifferentialForm projector;
    std::vector<DifferentialForm> basis;
    std::optional<std::pair<Scalar, Scalar>> rho_xi;  // (rho, xi) for the projector family
};

namespace detail {
/// Constant form -> coefficient vector over all 2^n masks; throws if any
/// component has a non-constant coefficient.
inline std::vector<Scalar> constant_coordinates(const DifferentialForm& f, int n) {
    std::vector<Scalar> out(1u << n);
    for (const auto& [m, p] : f.components()) {
        if (!p.is_constant()) throw CliffordError("ideal extraction needs constant-coefficient forms");
        out[m] = p.constant_value();
    }
    return out;
}
}  // namespace detail

/// Expands a constant-coefficient form in a constant-coefficient basis; nullopt
/// if the form is outside the span.
inline std::optional<std::vector<Scalar>> expand_in_basis(const DifferentialForm& f,
                                                          const std::vector<DifferentialForm>& basis) {
    int n = f.manifold()->dim();
    std::size_t rows = 1u << n;
    ScalarMatrix A(rows, basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        auto col = detail::constant_coordinates(basis[b], n);
        for (std::size_t r = 0; r < rows; ++r) A.at(r, b) = col[r];
    }
    std::vector<Scalar> rhs = detail::constant_coordinates(f, n);
    std::vector<Scalar> x;
    if (!ScalarMatrix::solve(A, rhs, x)) return std::nullopt;
    return x;
}

/**
 * Spans Lambda vee P by left-multiplying every frame monomial into P and
 * row-reducing over the scalar field; the echelon rows are the basis.
 */
inline LeftIdeal ideal_basis(const DifferentialForm& P, const CliffordContext& ctx) {
    if (!is_idempotent(P, ctx).idempotent) throw CliffordError("ideal_basis: input is not idempotent");
    int n = ctx.manifold->dim();
    std::size_t count = 1u << n;
    ScalarMatrix rows(count, count);
    for (std::uint32_t m = 0; m < count; ++m) {
        DifferentialForm theta(ctx.manifold);
        theta.set_component(m, Polynomial::one(ctx.manifold->vars()));
        auto coords = detail::constant_coordinates(vee(theta, P, ctx), n);
        for (std::size_t c = 0; c < count; ++c) rows.at(m, c) = coords[c];
    }
    std::size_t rank = rows.rref();
    LeftIdeal ideal;
    ideal.projector = P;
    for (std::size_t r = 0; r < rank; ++r) {
        DifferentialForm e(ctx.manifold);
        for (std::uint32_t m = 0; m < count; ++m) {
            if (rows.at(r, m).is_zero()) continue;
            e.set_component(m, Polynomial::constant(ctx.manifold->vars(), rows.at(r, m)));
        }
        ideal.basis.push_back(std::move(e));
    }
    return ideal;
}

/**
 * The ideal of P(xi) with the conventional four-element basis
 *   psi1 = 1 + 2 rho dx + 2 xi dx^dy
 *   psi2 = dy - 2 xi dx - 2 rho dx^dy
 *   psi3 = dy^dz + 2 xi dz^dx + 2 rho tau
 *   psi4 = dz + 2 rho dz^dx + 2 xi tau
 * (so the generator matrices come out in their standard printed form).
 */
inline LeftIdeal spinor_ideal(const Scalar& xi, const CliffordContext& ctx) {
    const auto& M = ctx.manifold;
    auto C = [&](const Scalar& s) { return Polynomial::constant(M->vars(), s); };
    Scalar rho = (xi * xi + Scalar(BigRat(1, 4))).sqrt();
    Scalar two_rho = Scalar(2) * rho, two_xi = Scalar(2) * xi;

    DifferentialForm P = projector_family(xi, M);
    // masks: dx=0b001, dy=0b010, dz=0b100, dx^dy=0b011, dz^dx=0b101, dy^dz=0b110, tau=0b111
    DifferentialForm psi1(M), psi2(M), psi3(M), psi4(M);
    psi1.set_component(0b000, C(Scalar(1)));
    psi1.set_component(0b001, C(two_rho));
    psi1.set_component(0b011, C(two_xi));

    psi2.set_component(0b010, C(Scalar(1)));
    psi2.set_component(0b001, C(-two_xi));
    psi2.set_component(0b011, C(-two_rho));

    psi3.set_component(0b110, C(Scalar(1)));
    psi3.set_component(0b101, C(-two_xi));  // dz^dx = -(dx^dz), stored on mask 0b101
    psi3.set_component(0b111, C(two_rho));

    psi4.set_component(0b100, C(Scalar(1)));
    psi4.set_component(0b101, C(-two_rho));
    psi4.set_component(0b111, C(two_xi));

    LeftIdeal ideal;
    ideal.projector = P;
    ideal.basis = {psi1, psi2, psi3, psi4};
    ideal.rho_xi = std::make_pair(rho, xi);
    for (const auto& psi : ideal.basis)
        if (vee(psi, P, ctx) != psi) throw CliffordError("spinor_ideal: basis element left the ideal");
    return ideal;
}

/**
 * The complexified rank-one idempotent P = 1/4 (1 + dz + i dx^dy + i tau) and
 * its two-element ideal basis
 *   psi1 = 1 + dz + i dx^dy + i tau,   psi2 = dx + i dy + i dy^dz + dx^dz.
 */
inline LeftIdeal complexified_spinor_ideal(const CliffordContext& ctx) {
    const auto& M = ctx.manifold;
    auto C = [&](const Scalar& s) { return Polynomial::constant(M->vars(), s); };
    Scalar i = Scalar::imaginary_unit();

    DifferentialForm P(M);
    Scalar quarter(BigRat(1, 4));
    P.set_component(0b000, C(quarter));
    P.set_component(0b100, C(quarter));
    P.set_component(0b011, C(quarter * i));
    P.set_component(0b111, C(quarter * i));

    DifferentialForm psi1(M), psi2(M);
    psi1.set_component(0b000, C(Scalar(1)));
    psi1.set_component(0b100, C(Scalar(1)));
    psi1.set_component(0b011, C(i));
    psi1.set_component(0b111, C(i));

    psi2.set_component(0b001, C(Scalar(1)));
    psi2.set_component(0b010, C(i));
    psi2.set_component(0b110, C(i));
    psi2.set_component(0b101, C(Scalar(1)));  // dx^dz stored ascending

    LeftIdeal ideal;
    ideal.projector = P;
    ideal.basis = {psi1, psi2};
    for (const auto& psi : ideal.basis)
        if (vee(psi, P, ctx) != psi) throw CliffordError("complexified ideal: basis element left the ideal");
    return ideal;
}

/// Matrix of a generator acting on an ideal basis by vee-left-multiplication.
struct RepMatrix {
    std::string label;
    ScalarMatrix mat;
};

/// Columns: the expansion of (generator vee psi_b) in the basis.
inline ScalarMatrix left_multiplication_matrix(const DifferentialForm& generator, const LeftIdeal& ideal,
                                               const CliffordContext& ctx) {
    std::size_t dim = ideal.basis.size();
    ScalarMatrix M(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        auto coeffs = expand_in_basis(vee(generator, ideal.basis[b], ctx), ideal.basis);
        if (!coeffs) throw CliffordError("ideal basis is not closed under generator multiplication");
        for (std::size_t r = 0; r < dim; ++r) M.at(r, b) = (*coeffs)[r];
    }
    return M;
}

/// One matrix per coframe generator theta^a.
inline std::vector<RepMatrix> generator_matrices(const LeftIdeal& ideal, const CliffordContext& ctx) {
    std::vector<RepMatrix> out;
    for (int a = 0; a < ctx.manifold->dim(); ++a) {
        DifferentialForm gen(ctx.manifold);
        gen.set_component(1u << a, Polynomial::one(ctx.manifold->vars()));
        out.push_back(RepMatrix{ctx.manifold->frame_labels()[a], left_multiplication_matrix(gen, ideal, ctx)});
    }
    return out;
}

/// The matrix of the volume form acting on the ideal; J*J = -Id in odd
/// Euclidean dimension, giving the ideal a complex structure.
inline RepMatrix volume_complex_structure(const LeftIdeal& ideal, const CliffordContext& ctx) {
    int n = ctx.manifold->dim();
    DifferentialForm tau(ctx.manifold);
    tau.set_component((1u << n) - 1, Polynomial::one(ctx.manifold->vars()));
    RepMatrix Jereport{"J", left_multiplication_matrix(tau, ideal, ctx)};
    std::size_t dim = ideal.basis.size();
    ScalarMatrix sq = Jereport.mat * Jereport.mat;
    if (sq != Scalar(-1) * ScalarMatrix::identity(dim))
        throw CliffordError("volume element does not square to -1 on this ideal");
    return Jereport;
}

/// First-order operator with constant coefficients: sum_a coeff[a] d_a.
using FirstOrderOp = std::map<int, Scalar>;

struct FirstOrderMatrix {
    std::size_t dim = 0;
    std::vector<FirstOrderOp> entries;  // row-major

    FirstOrderMatrix() = default;
    explicit FirstOrderMatrix(std::size_t n) : dim(n), entries(n * n) {}
    FirstOrderOp& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    const FirstOrderOp& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

/// Adds c * M (x) d_axis into the operator matrix.
inline void accumulate_axis(FirstOrderMatrix& D, const ScalarMatrix& M, int axis, const Scalar& c = Scalar(1)) {
    for (std::size_t r = 0; r < D.dim; ++r)
        for (std::size_t col = 0; col < D.dim; ++col) {
            Scalar v = c * M.at(r, col);
            if (v.is_zero()) continue;
            auto [it, fresh] = D.at(r, col).try_emplace(axis, v);
            if (!fresh) {
                it->second += v;
                if (it->second.is_zero()) D.at(r, col).erase(it);
            }
        }
}

/// True iff P vee (e_a P) = 0 for every frame direction (flat context).
inline bool covariant_constancy(const DifferentialForm& P, const CliffordContext& ctx) {
    for (int a = 0; a < ctx.manifold->dim(); ++a) {
        DifferentialForm dP(ctx.manifold);
        for (const auto& [m, f] : P.components())
            dP.add_component(m, ctx.manifold->frame_action(a).apply(f));
        if (!vee(P, dP, ctx).is_zero()) return false;
    }
    return true;
}

/**
 * The Dirac operator on ideal coefficients: D(sum f_b psi_b) expands as
 * sum_a M^a (x) d_a with M^a the generator matrices. Meaningful when the
 * projector is covariantly constant in the flat frame.
 */
inline FirstOrderMatrix dirac_matrix(const LeftIdeal& ideal, const CliffordContext& ctx) {
    for (int a = 0; a < ctx.manifold->dim(); ++a)
        for (int b = 0; b < ctx.manifold->dim(); ++b)
            for (int c = 0; c < ctx.manifold->dim(); ++c)
                if (!ctx.manifold->structure_constant(a, b, c).is_zero())
                    throw CliffordError("dirac_matrix needs a flat coordinate frame");
    if (!covariant_constancy(ideal.projector, ctx))
        throw CliffordError("dirac_matrix: projector is not covariantly constant");
    auto gens = generator_matrices(ideal, ctx);
    FirstOrderMatrix D(ideal.basis.size());
    for (int a = 0; a < ctx.manifold->dim(); ++a) accumulate_axis(D, gens[a].mat, a);
    return D;
}

/// Second-order composition of two first-order matrices; keys (i<=j) hold the
/// total coefficient of d_i d_j.
using SecondOrderOp = std::map<std::pair<int, int>, Scalar>;

inline std::vector<SecondOrderOp> compose(const FirstOrderMatrix& A, const FirstOrderMatrix& B) {
    std::size_t n = A.dim;
    std::vector<SecondOrderOp> out(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < n; ++k)
                for (const auto& [ax1, c1] : A.at(r, k))
                    for (const auto& [ax2, c2] : B.at(k, c)) {
                        auto key = std::minmax(ax1, ax2);
                        Scalar v = c1 * c2;
                        auto [it, fresh] = out[r * n + c].try_emplace(key, v);
                        if (!fresh) {
                            it->second += v;
                            if (it->second.is_zero()) out[r * n + c].erase(it);
                        }
                    }
    return out;
}

/**
 * Reduction of the four-real-dimensional ideal to two complex dimensions:
 * along B = {psi1, psi2, J psi1, J psi2} the Dirac matrix has the block form
 * ((A, -B), (B, A)) and J vee acts as multiplication by i, giving the 2x2
 * complex operator A + iB together with the 2x2 complex generator images.
 */
struct ComplexReduction {
    FirstOrderMatrix dirac_2x2;            // complex coefficients
    std::vector<RepMatrix> generator_2x2;  // images of the coframe generators
};

inline ComplexReduction complex_reduction(const LeftIdeal& ideal, const RepMatrix& J,
                                          const CliffordContext& ctx) {
    if (ideal.basis.size() != 4) throw CliffordError("complex_reduction expects a 4-dimensional ideal");
    ScalarMatrix S(4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
        S.at(r, 0) = (r == 0) ? Scalar(1) : Scalar();
        S.at(r, 1) = (r == 1) ? Scalar(1) : Scalar();
        S.at(r, 2) = J.mat.at(r, 0);
        S.at(r, 3) = J.mat.at(r, 1);
    }
    ScalarMatrix Sinv = S.inverse();

    auto to_complex_2x2 = [&](const ScalarMatrix& M4, const std::string& label) {
        ScalarMatrix MB = Sinv * M4 * S;
        // block structure ((A, -B), (B, A))
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) {
                if (MB.at(r, c) != MB.at(r + 2, c + 2) || MB.at(r, c + 2) != -MB.at(r + 2, c))
                    throw CliffordError("operator does not commute with the complex structure");
            }
        ScalarMatrix out(2, 2);
        Scalar i = Scalar::imaginary_unit();
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) out.at(r, c) = MB.at(r, c) + i * MB.at(r + 2, c);
        return RepMatrix{label, out};
    };

    ComplexReduction red;
    auto gens = generator_matrices(ideal, ctx);
    FirstOrderMatrix D2(2);
    for (int a = 0; a < ctx.manifold->dim(); ++a) {
        RepMatrix img = to_complex_2x2(gens[a].mat, gens[a].label);
        accumulate_axis(D2, img.mat, a);
        red.generator_2x2.push_back(std::move(img));
    }
    red.dirac_2x2 = std::move(D2);
    return red;
}

}  // namespace spinforms
