#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "spinforms/exterior.hpp"

using namespace spinforms;

namespace {

Polynomial random_poly_on(const std::shared_ptr<const VariableSet>& vars, std::mt19937& rng, int max_deg = 2) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> expo(0, max_deg);
    std::uniform_int_distribution<int> coeff(-4, 4);
    int ir = vars->index_of("r");
    std::uniform_int_distribution<int> rexpo(-2, 2);
    Polynomial p = Polynomial::zero(vars);
    int count = nterms(rng);
    for (int t = 0; t < count; ++t) {
        Monomial m(vars->size());
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] = (static_cast<int>(i) == ir) ? rexpo(rng) : expo(rng);
        p += Polynomial::monomial(vars, m, Scalar(BigRat(coeff(rng)), BigRat(coeff(rng))));
    }
    return p;
}

DifferentialForm random_form(const std::shared_ptr<const FrameManifold>& M, std::mt19937& rng,
                             int max_components = 3, int max_deg = 2) {
    std::uniform_int_distribution<int> mask(0, (1 << M->dim()) - 1);
    DifferentialForm out(M);
    for (int c = 0; c < max_components; ++c)
        out.add_component(static_cast<std::uint32_t>(mask(rng)), random_poly_on(M->vars(), rng, max_deg));
    return out;
}

/// Direct Lie derivative along the frame field e_b, without Cartan's formula:
/// acts on coefficients through the frame action and on the coframe through
/// L_{e_b} theta^a = -c^a_{bd} theta^d.
DifferentialForm lie_direct(int b, const DifferentialForm& alpha) {
    const auto& M = alpha.manifold();
    int n = M->dim();
    DifferentialForm out(M);
    for (const auto& [mask, f] : alpha.components()) {
        out.add_component(mask, M->frame_action(b).apply(f));
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            for (int d = 0; d < n; ++d) {
                Scalar c = M->structure_constant(j, b, d);
                if (c.is_zero()) continue;
                if (d == j) {
                    out.add_component(mask, (-c) * f);
                    continue;
                }
                if (mask & (1u << d)) continue;
                std::uint32_t rest = mask & ~(1u << j);
                int sign = detail::removal_sign(mask, j) * detail::shuffle_sign(1u << d, rest);
                out.add_component(rest | (1u << d), Scalar(-sign) * (c * f));
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("wedge basics") {
    auto M = FrameManifold::su2_killing();
    auto th1 = DifferentialForm::frame_form(M, {0});
    auto th2 = DifferentialForm::frame_form(M, {1});
    CHECK(wedge(th1, th2) == Scalar(-1) * wedge(th2, th1));
    CHECK(wedge(th1, th1).is_zero());
    CHECK(wedge(DifferentialForm::unit(M), th1) == th1);

    auto E = FrameManifold::euclidean_r3();
    auto tau = wedge(wedge(DifferentialForm::frame_form(E, {0}), DifferentialForm::frame_form(E, {1})),
                     DifferentialForm::frame_form(E, {2}));
    CHECK(tau == DifferentialForm::frame_form(E, {0, 1, 2}));
    CHECK(tau == hodge_star(DifferentialForm::unit(E)));  // volume form
}

TEST_CASE("contraction") {
    auto M = FrameManifold::su2_killing();
    auto th1 = DifferentialForm::frame_form(M, {0});
    auto th3 = DifferentialForm::frame_form(M, {2});
    CHECK(contract(2, th3) == DifferentialForm::unit(M));
    CHECK(contract(2, wedge(th1, th3)) == Scalar(-1) * th1);
    CHECK(contract(2, th1).is_zero());

    // i_X i_X = 0 with polynomial weights
    std::mt19937 rng(43);
    std::vector<Polynomial> w;
    for (int a = 0; a < 3; ++a) w.push_back(random_poly_on(M->vars(), rng));
    for (int t = 0; t < 20; ++t) {
        auto alpha = random_form(M, rng);
        CHECK(contract(w, contract(w, alpha)).is_zero());
    }
}

TEST_CASE("hodge table on euclidean 3-space") {
    auto E = FrameManifold::euclidean_r3();
    auto dx = DifferentialForm::frame_form(E, {0});
    auto dy = DifferentialForm::frame_form(E, {1});
    auto dz = DifferentialForm::frame_form(E, {2});
    auto tau = DifferentialForm::frame_form(E, {0, 1, 2});

    CHECK(hodge_star(DifferentialForm::unit(E)) == tau);
    CHECK(hodge_star(tau) == DifferentialForm::unit(E));
    CHECK(hodge_star(dx) == wedge(dy, dz));
    CHECK(hodge_star(wedge(dy, dz)) == dx);
    CHECK(hodge_star(dy) == wedge(dz, dx));
    CHECK(hodge_star(wedge(dz, dx)) == dy);
    CHECK(hodge_star(dz) == wedge(dx, dy));
    CHECK(hodge_star(wedge(dx, dy)) == dz);
}

TEST_CASE("hodge on the monopole metric") {
    Scalar k(4);
    auto M = FrameManifold::r4_monopole(k);
    auto dr = DifferentialForm::frame_form(M, {0});
    // *dr = sqrt(k) r^2 th1^th2^th3
    Monomial r2(M->vars()->size(), 0);
    r2[M->vars()->index_of("r")] = 2;
    DifferentialForm expected(M);
    expected.set_component(0b1110, Polynomial::monomial(M->vars(), r2, Scalar(2)));
    CHECK(hodge_star(dr) == expected);

    // ** = (-1)^{k(n-k)} on degree-k forms
    std::mt19937 rng(47);
    for (int deg = 0; deg <= 4; ++deg) {
        for (int t = 0; t < 10; ++t) {
            DifferentialForm alpha(M);
            std::uniform_int_distribution<int> mask(0, 15);
            for (int tries = 0; tries < 8; ++tries) {
                auto m = static_cast<std::uint32_t>(mask(rng));
                if (std::popcount(m) == deg) alpha.add_component(m, random_poly_on(M->vars(), rng, 1));
            }
            int sign = ((deg * (4 - deg)) % 2 == 0) ? 1 : -1;
            CHECK(hodge_star(hodge_star(alpha)) == Scalar(sign) * alpha);
        }
    }
}

TEST_CASE("exterior derivative basics") {
    auto E = FrameManifold::euclidean_r3();
    Polynomial x = Polynomial::variable(E->vars(), "x");
    auto dy = DifferentialForm::frame_form(E, {1});
    auto dx = DifferentialForm::frame_form(E, {0});
    CHECK(exterior_derivative(x * dy) == wedge(dx, dy));

    // Maurer-Cartan: d th3 = -th1^th2 under the calibrated epsilon convention
    auto M = FrameManifold::su2_killing();
    auto th3 = DifferentialForm::frame_form(M, {2});
    auto th1 = DifferentialForm::frame_form(M, {0});
    auto th2 = DifferentialForm::frame_form(M, {1});
    CHECK(exterior_derivative(th3) == Scalar(-1) * wedge(th1, th2));

    // df = sum X_a(f) theta^a, cross-checked by flow finite differences
    Polynomial f = Polynomial::variable(M->vars(), "u") * Polynomial::variable(M->vars(), "vb");
    auto df = exterior_derivative(DifferentialForm::from_function(M, f));
    std::mt19937 rng(53);
    for (int a = 0; a < 3; ++a) {
        Polynomial comp = df.component(1u << a);
        CHECK(comp == su2_left_invariant_field(M->vars(), a + 1).apply(f));
        auto pt = oracles::random_sphere_point(rng);
        auto vals = oracles::point_values(M->vars(), pt);
        CHECK(std::abs(comp.eval_indexed(vals) - oracles::flow_derivative_left(f, pt, a + 1)) < 1e-7);
    }
}

TEST_CASE("d squared and codifferential squared vanish") {
    std::mt19937 rng(59);
    for (auto M : {FrameManifold::euclidean_r3(), FrameManifold::su2_killing(),
                   FrameManifold::r4_monopole(Scalar(4))}) {
        for (int t = 0; t < 200; ++t) {
            auto alpha = random_form(M, rng);
            CHECK(exterior_derivative(exterior_derivative(alpha)).is_zero());
            CHECK(codifferential(codifferential(alpha)).is_zero());
        }
    }
}

TEST_CASE("codifferential fixtures") {
    auto E = FrameManifold::euclidean_r3();
    auto dx = DifferentialForm::frame_form(E, {0});
    CHECK(codifferential(dx).is_zero());
    Polynomial x = Polynomial::variable(E->vars(), "x");
    CHECK(codifferential(x * dx) == Scalar(-1) * DifferentialForm::unit(E));  // delta(x dx) = -1
    CHECK(codifferential(DifferentialForm::from_function(E, x)).is_zero());

    // direct *d* computation for the degree-1 sign on R^3
    std::mt19937 rng(61);
    for (int t = 0; t < 20; ++t) {
        DifferentialForm alpha(E);
        std::uniform_int_distribution<int> which(0, 2);
        alpha.add_component(1u << which(rng), random_poly_on(E->vars(), rng));
        CHECK(codifferential(alpha) == Scalar(-1) * hodge_star(exterior_derivative(hodge_star(alpha))));
    }
}

TEST_CASE("laplacian and dirac operator identities") {
    std::mt19937 rng(67);
    for (auto M : {FrameManifold::euclidean_r3(), FrameManifold::su2_killing(),
                   FrameManifold::r4_monopole(Scalar(1))}) {
        for (int t = 0; t < 60; ++t) {
            auto alpha = random_form(M, rng);
            auto dd = exterior_derivative(alpha);
            auto del = codifferential(alpha);
            auto lap = laplace_beltrami(alpha);
            // Delta = (d + delta)^2
            auto sum = dd + del;
            auto square = exterior_derivative(sum) + codifferential(sum);
            CHECK(lap == square);
            // D^2 = -Delta
            auto D2 = dirac_kahler(dirac_kahler(alpha));
            CHECK(D2 == Scalar(-1) * lap);
        }
    }
    CHECK(laplace_beltrami(DifferentialForm::unit(FrameManifold::su2_killing())).is_zero());
}

TEST_CASE("pointwise inner products and the determinant rule") {
    auto M = FrameManifold::su2_killing();
    auto th1 = DifferentialForm::frame_form(M, {0});
    auto th12 = DifferentialForm::frame_form(M, {0, 1});
    CHECK(pointwise_inner(th1, th1) == Polynomial::one(M->vars()));
    CHECK(pointwise_inner(th12, th12) == Polynomial::one(M->vars()));

    // determinant rule on decomposable pairs of random 1-forms
    std::mt19937 rng(71);
    for (int t = 0; t < 25; ++t) {
        std::vector<DifferentialForm> a, b;
        for (int i = 0; i < 2; ++i) {
            DifferentialForm ai(M), bi(M);
            for (int c = 0; c < 3; ++c) {
                ai.add_component(1u << c, random_poly_on(M->vars(), rng, 1));
                bi.add_component(1u << c, random_poly_on(M->vars(), rng, 1));
            }
            a.push_back(ai);
            b.push_back(bi);
        }
        Polynomial det = pointwise_inner(a[0], b[0]) * pointwise_inner(a[1], b[1]) -
                         pointwise_inner(a[0], b[1]) * pointwise_inner(a[1], b[0]);
        CHECK(pointwise_inner(wedge(a[0], a[1]), wedge(b[0], b[1])) == det);
    }

    // alpha ^ *beta = (alpha | beta) Omega for same-degree pairs, with the
    // pairing conjugate-linear in the first slot
    auto Omega = hodge_star(DifferentialForm::unit(M));
    for (int t = 0; t < 30; ++t) {
        for (int deg = 0; deg <= 3; ++deg) {
            DifferentialForm alpha(M), beta(M);
            std::uniform_int_distribution<int> mask(0, 7);
            for (int tries = 0; tries < 6; ++tries) {
                auto m1 = static_cast<std::uint32_t>(mask(rng));
                auto m2 = static_cast<std::uint32_t>(mask(rng));
                if (std::popcount(m1) == deg) alpha.add_component(m1, random_poly_on(M->vars(), rng, 1));
                if (std::popcount(m2) == deg) beta.add_component(m2, random_poly_on(M->vars(), rng, 1));
            }
            DifferentialForm conj_alpha(M);
            for (const auto& [m, f] : alpha.components()) conj_alpha.add_component(m, f.conjugate());
            CHECK(wedge(conj_alpha, hodge_star(beta)) == pointwise_inner(alpha, beta) * Omega);
        }
    }
}

TEST_CASE("l2 inner product and adjointness on the closed manifold") {
    auto M = FrameManifold::su2_killing();
    auto th1 = DifferentialForm::frame_form(M, {0});
    CHECK(l2_inner(th1, th1) == Scalar(1));

    // forms of different degree are orthogonal
    auto f = DifferentialForm::from_function(M, Polynomial::variable(M->vars(), "u"));
    auto rep = inner_report(f, th1);
    CHECK_FALSE(rep.degree_compatible);
    CHECK(rep.integrated.is_zero());

    // <alpha | d beta> = <delta alpha | beta> exactly
    std::mt19937 rng(73);
    for (int t = 0; t < 60; ++t) {
        auto alpha = random_form(M, rng);
        auto beta = random_form(M, rng);
        CHECK(l2_inner(alpha, exterior_derivative(beta)) == l2_inner(codifferential(alpha), beta));
    }

    // non-compact manifolds refuse symbolic integration
    auto E = FrameManifold::euclidean_r3();
    auto dx = DifferentialForm::frame_form(E, {0});
    CHECK_THROWS_AS(l2_inner(dx, dx), UnsupportedDomain);
}

TEST_CASE("cartan formula matches the direct lie derivative") {
    std::mt19937 rng(79);
    for (auto M : {FrameManifold::su2_killing(), FrameManifold::euclidean_r3()}) {
        for (int t = 0; t < 40; ++t) {
            auto alpha = random_form(M, rng);
            for (int b = 0; b < M->dim(); ++b) {
                CHECK(lie_derivative(b, alpha) == lie_direct(b, alpha));
            }
        }
    }
}
