#include <doctest.h>

#include <cmath>

#include "polyschwarz/elements.hpp"
#include "polyschwarz/errors.hpp"
#include "polyschwarz/quadrature.hpp"
#include "element_oracles.hpp"
#include "support.hpp"

using namespace polyschwarz;
using namespace test_support;

namespace {

const Family kFamilies[] = {Family::bfs, Family::adini, Family::c0ip, Family::jinwu};

}  // namespace

TEST_CASE("family names and orders") {
    for (Family f : kFamilies) CHECK(parse_family(to_string(f)) == f);
    CHECK_THROWS_AS(parse_family("argyris"), ConfigError);
    CHECK(order_of(Family::bfs) == 2);
    CHECK(order_of(Family::c0ip) == 2);
    CHECK(order_of(Family::jinwu) == 3);
}

TEST_CASE("Gauss rules") {
    for (int q = 1; q <= 12; ++q) {
        const auto rule = QuadratureRule::tensor_gauss(q);
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(4.0).epsilon(1e-14));
        // Exact for x^(2q-1) y^(2q-2) ... test the top even degree 2q-2 per axis.
        double integral = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k)
            integral += rule.weights[k] * ipow(rule.points[k][0], 2 * q - 2) *
                        ipow(rule.points[k][1], 2 * q - 2);
        const double exact = std::pow(2.0 / (2 * q - 1), 2);
        CHECK(integral == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("DOF and monomial counts") {
    CHECK(build_element(Family::bfs).size() == 16);
    CHECK(build_element(Family::adini).size() == 12);
    CHECK(build_element(Family::c0ip).size() == 9);
    CHECK(build_element(Family::jinwu).size() == 20);
    for (Family f : kFamilies) {
        const auto e = build_element(f);
        CHECK(e.monomials().size() == static_cast<std::size_t>(e.size()));
        CHECK(e.vandermonde_condition() < 1e8);
    }
}

TEST_CASE("unisolvence: dof_i(N_j) = delta_ij") {
    for (Family f : kFamilies) {
        const auto e = build_element(f);
        for (int i = 0; i < e.size(); ++i) {
            const auto& dof = e.dofs()[i];
            const ShapeTable t = e.eval(dof.anchor, dof.deriv.order());
            for (int j = 0; j < e.size(); ++j) {
                CHECK(std::abs(t(dof.deriv, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("inconsistent DOF/monomial sets are rejected") {
    const auto c0 = build_element(Family::c0ip);
    // x^4 agrees with x^2 on the Lagrange nodes {-1, 0, 1}.
    auto monos = c0.monomials();
    for (auto& mk : monos)
        if (mk == MultiIndex{2, 2}) mk = {4, 0};
    CHECK_THROWS_AS(make_element(Family::c0ip, monos, c0.dofs()), Error);
    auto fewer = c0.monomials();
    fewer.pop_back();
    CHECK_THROWS_AS(make_element(Family::c0ip, fewer, c0.dofs()), Error);
}

TEST_CASE("BFS value shape function is a tensor cubic Hermite") {
    const auto e = build_element(Family::bfs);
    int j0 = -1;
    for (int j = 0; j < e.size(); ++j)
        if (e.dofs()[j].anchor == Point{-1, -1} && e.dofs()[j].deriv == MultiIndex{0, 0}) j0 = j;
    REQUIRE(j0 >= 0);
    auto h0 = [](double s) { return 0.25 * (1 - s) * (1 - s) * (2 + s); };
    for (int k = 0; k < 20; ++k) {
        const Point x{uniform(), uniform()};
        CHECK(e.eval(x, 0)({0, 0}, j0) == doctest::Approx(h0(x[0]) * h0(x[1])).epsilon(1e-12));
    }
    const ShapeTable t = e.eval({-1, -1}, 0);
    for (int j = 0; j < e.size(); ++j) CHECK(std::abs(t({0, 0}, j) - (j == j0 ? 1.0 : 0.0)) <= 1e-13);
}

TEST_CASE("C0-IP centre Lagrange function") {
    const auto e = build_element(Family::c0ip);
    const ShapeTable t = e.eval({0, 0}, 0);
    for (int j = 0; j < e.size(); ++j) {
        const bool centre = e.dofs()[j].anchor == Point{0, 0};
        CHECK(std::abs(t({0, 0}, j) - (centre ? 1.0 : 0.0)) <= 1e-13);
    }
}

TEST_CASE("polynomial reproduction") {
    SUBCASE("Adini reproduces P3") {
        const auto e = build_element(Family::adini);
        for (int trial = 0; trial < 3; ++trial) {
            const Poly p = random_poly(3);
            const Eigen::VectorXd v = dof_vector(e, p);
            for (int k = 0; k < 20; ++k) {
                const Point x{uniform(), uniform()};
                const ShapeTable t = e.eval(x, 0);
                double s = 0.0;
                for (int j = 0; j < e.size(); ++j) s += v(j) * t({0, 0}, j);
                CHECK(s == doctest::Approx(p.deriv({0, 0}, x)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("Adini reproduces x1 at (0.3, -0.7)") {
        const auto e = build_element(Family::adini);
        const Eigen::VectorXd v = dof_vector(e, Poly{{{{1, 0}, 1.0}}});
        const ShapeTable t = e.eval({0.3, -0.7}, 0);
        double s = 0.0;
        for (int j = 0; j < e.size(); ++j) s += v(j) * t({0, 0}, j);
        CHECK(s == doctest::Approx(0.3).epsilon(1e-13));
    }
    SUBCASE("every family reproduces its own space with derivatives") {
        for (Family f : kFamilies) {
            const auto e = build_element(f);
            Poly p;
            for (const auto& mk : e.monomials()) p.terms.push_back({mk, uniform()});
            const Eigen::VectorXd v = dof_vector(e, p);
            for (int k = 0; k < 10; ++k) {
                const Point x{uniform(), uniform()};
                const ShapeTable t = e.eval(x, e.m());
                for (int a = 0; a <= e.m(); ++a)
                    for (int b = 0; a + b <= e.m(); ++b) {
                        double s = 0.0;
                        for (int j = 0; j < e.size(); ++j) s += v(j) * t({a, b}, j);
                        CHECK(s == doctest::Approx(p.deriv({a, b}, x)).epsilon(1e-11).scale(1.0));
                    }
            }
        }
    }
}

TEST_CASE("Jin-Wu functional applied to x^4 y") {
    const auto e = build_element(Family::jinwu);
    bool found = false;
    for (const auto& dof : e.dofs()) {
        if (dof.anchor == Point{1, 1} && dof.deriv == MultiIndex{2, 0}) {
            CHECK(apply_functional(dof, {4, 1}) == 12.0);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("energy weights") {
    const auto w2 = energy_weights(2);
    REQUIRE(w2.size() == 3);
    CHECK(w2[0].first == MultiIndex{2, 0});
    CHECK(w2[0].second == 1.0);
    CHECK(w2[1].second == 2.0);
    CHECK(w2[2].second == 1.0);
    const auto w3 = energy_weights(3);
    REQUIRE(w3.size() == 4);
    CHECK(w3[1].first == MultiIndex{2, 1});
    CHECK(w3[1].second == 3.0);
    CHECK(w3[2].second == 3.0);
}

TEST_CASE("local stiffness kernels, rank, symmetry and oracle agreement") {
    for (Family f : kFamilies) {
        CAPTURE(to_string(f));
        const auto e = build_element(f);
        const int m = e.m();
        for (double h : {1.0, 0.125}) {
            const Eigen::MatrixXd k =
                local_stiffness(e, h, QuadratureRule::tensor_gauss(e.default_quadrature_points()));
            CHECK(rel_diff(k, k.transpose()) <= 1e-14);

            // Polynomials of degree <= m - 1 are annihilated.
            for (int trial = 0; trial < 4; ++trial) {
                const Eigen::VectorXd v = dof_vector(e, random_poly(m - 1));
                CHECK((k * v).norm() <= 1e-10 * k.norm() * v.norm());
            }
            // Kernel dimension equals dim P_{m-1}.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
            const auto& ev = es.eigenvalues();
            int kernel = 0;
            for (int i = 0; i < ev.size(); ++i) {
                CHECK(ev(i) >= -1e-10 * ev.maxCoeff());
                if (ev(i) < 1e-10 * ev.maxCoeff()) ++kernel;
            }
            CHECK(kernel == m * (m + 1) / 2);

            // Doubled-order quadrature oracle.
            const Eigen::MatrixXd oracle = stiffness_oracle(e, h, 2 * e.default_quadrature_points());
            CHECK(rel_diff(k, oracle) <= 1e-12);
        }
    }
}

TEST_CASE("local stiffness is independent of the quadrature order") {
    for (Family f : kFamilies) {
        const auto e = build_element(f);
        const int q = e.default_quadrature_points();
        const auto a = local_stiffness(e, 0.3, QuadratureRule::tensor_gauss(q));
        const auto b = local_stiffness(e, 0.3, QuadratureRule::tensor_gauss(q + 2));
        CHECK(rel_diff(a, b) <= 1e-12);
    }
}

TEST_CASE("local stiffness scaling law K(h/2) = 2^(2m-2) K(h)") {
    for (Family f : kFamilies) {
        const auto e = build_element(f);
        const auto quad = QuadratureRule::tensor_gauss(e.default_quadrature_points());
        const auto k1 = local_stiffness(e, 0.25, quad);
        const auto k2 = local_stiffness(e, 0.125, quad);
        CHECK(rel_diff(k2, std::pow(2.0, 2 * e.m() - 2) * k1) <= 1e-13);
    }
    CHECK_THROWS_AS(local_stiffness(build_element(Family::bfs), 0.0, QuadratureRule::tensor_gauss(6)),
                    ConfigError);
}

TEST_CASE("local load") {
    const auto quad6 = QuadratureRule::tensor_gauss(6);
    SUBCASE("zero field") {
        for (Family f : kFamilies) {
            const auto e = build_element(f);
            CHECK(local_load(e, {0.25, 0.5}, 0.25, [](Point) { return 0.0; }, quad6).norm() == 0.0);
        }
    }
    SUBCASE("c0ip, f = 1, h = 0.5 sums to the cell area") {
        const auto e = build_element(Family::c0ip);
        const auto b = local_load(e, {0.5, 0.0}, 0.5, [](Point) { return 1.0; }, quad6);
        CHECK(b.sum() == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("bfs, f = x1 on the unit cell: value rows sum to the integral") {
        const auto e = build_element(Family::bfs);
        const auto b = local_load(e, {0.0, 0.0}, 1.0, [](Point x) { return x[0]; }, quad6);
        double s = 0.0;
        for (int i = 0; i < e.size(); ++i)
            if (e.dofs()[i].deriv == MultiIndex{0, 0}) s += b(i);
        CHECK(s == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("smooth field agrees with a high-order quadrature oracle") {
        const auto e = build_element(Family::jinwu);
        auto f = [](Point x) { return std::sin(3 * x[0]) * std::exp(x[1]); };
        const Point origin{0.125, 0.375};
        const double h = 0.125;
        const auto b = local_load(e, origin, h, f, QuadratureRule::tensor_gauss(8));
        const auto rule = GaussRule1D::make(20);
        for (int j = 0; j < e.size(); ++j) {
            double s = 0.0;
            for (int qx = 0; qx < 20; ++qx)
                for (int qy = 0; qy < 20; ++qy) {
                    const Point r{rule.nodes[qx], rule.nodes[qy]};
                    s += rule.weights[qx] * rule.weights[qy] * f(to_physical(origin, h, r)) *
                         shape_oracle(e, j, {0, 0}, r);
                }
            s *= h * h / 4;
            CHECK(b(j) == doctest::Approx(s).epsilon(1e-10).scale(h * h));
        }
    }
}
