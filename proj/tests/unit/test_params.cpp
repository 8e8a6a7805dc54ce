#include <doctest.h>

#include <random>
#include <vector>

#include "ckn/errors.hpp"
#include "ckn/params.hpp"

using ckn::CknParams;
using ckn::derive;
using ckn::RawParams;
using ckn::Rational;
using ckn::validate;

namespace {

RawParams raw(int n, Rational p, Rational q, Rational mu) { return RawParams{n, p, q, mu}; }

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
    for (const auto& v : violations)
        if (v.find(needle) != std::string::npos) return true;
    return false;
}

// Rejection sampler over a small rational lattice; deterministic.
std::vector<RawParams> random_valid_params(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> n_dist(3, 8);
    std::uniform_int_distribution<int> quarters(5, 16);  // p in (1, 4]
    std::vector<RawParams> out;
    while (static_cast<int>(out.size()) < count) {
        RawParams candidate;
        candidate.n = n_dist(rng);
        candidate.p = Rational(quarters(rng), 4);
        candidate.q = candidate.p + Rational(quarters(rng), 16);
        candidate.mu = Rational(quarters(rng), 16);
        if (validate(candidate).ok) out.push_back(candidate);
    }
    return out;
}

}  // namespace

TEST_CASE("validate: admissible desk point") {
    const auto report = validate(raw(4, Rational(2), Rational(5, 2), Rational(1)));
    CHECK(report.ok);
    CHECK(report.violations.empty());
}

TEST_CASE("validate: q = p fails the strict chain link") {
    const auto report = validate(raw(3, Rational(2), Rational(2), Rational(1, 2)));
    CHECK_FALSE(report.ok);
    CHECK(mentions(report.violations, "q < p(q-1)/(p-1)"));
}

TEST_CASE("validate: p + mu >= n fails") {
    const auto report = validate(raw(2, Rational(2), Rational(3), Rational(1, 2)));
    CHECK_FALSE(report.ok);
    CHECK(mentions(report.violations, "p + mu < n"));
}

TEST_CASE("validate: the a = 1 boundary is admissible, beyond it is not") {
    // r = np/(n-p) exactly <=> a = 1
    CHECK(validate(raw(4, Rational(2), Rational(3), Rational(1))).ok);
    // (5, 2, 3, 1/2): r = 4 > np/(n-p) = 10/3
    const auto report = validate(raw(5, Rational(2), Rational(3), Rational(1, 2)));
    CHECK_FALSE(report.ok);
    CHECK(mentions(report.violations, "np/(n-p)"));
}

TEST_CASE("derive: desk point is exact in rational arithmetic") {
    const CknParams c = derive(raw(4, Rational(2), Rational(5, 2), Rational(1)));
    CHECK(c.r == Rational(3));
    CHECK(c.theta == Rational(2));
    CHECK(c.s == Rational(2));
    CHECK(c.a == Rational(4, 9));
    CHECK(c.nu == Rational(3));
    CHECK(c.alpha == Rational(-1, 2));
    CHECK(c.beta == Rational(-4, 5));
    CHECK(c.gamma == Rational(-2, 3));
    CHECK(c.kappa == Rational(1));
    CHECK(c.g_exp == Rational(-3));
    CHECK(c.sigma == Rational(-1, 2));
    CHECK(c.q_term_active());
}

TEST_CASE("derive: a = 1 at the boundary point, q term inactive") {
    const CknParams c = derive(raw(4, Rational(2), Rational(3), Rational(1)));
    CHECK(c.a == Rational(1));
    CHECK_FALSE(c.q_term_active());
    CHECK(c.g_exp == Rational(-1));
}

TEST_CASE("derive: throws on invalid input") {
    CHECK_THROWS_AS(derive(raw(3, Rational(2), Rational(2), Rational(1, 2))), ckn::InvalidParams);
}

TEST_CASE("derive: zero-sum identity a/p + (1-a)/q - 1/r = a/n exactly, random points") {
    for (const auto& candidate : random_valid_params(40, 20240817u)) {
        const CknParams c = derive(candidate);
        const Rational lhs = c.a / c.p + (Rational(1) - c.a) / c.q - Rational(1) / c.r;
        CHECK(lhs == c.a / Rational(c.n));
        CHECK(c.a > Rational(0));
        CHECK(c.a <= Rational(1));
        // sigma is pinned through gamma = a sigma + (1-a) beta
        CHECK(c.gamma == c.a * c.sigma + (Rational(1) - c.a) * c.beta);
        // exponent window used by every convergence check
        const Rational n(c.n);
        CHECK(n + c.gamma * c.r - Rational(1) > Rational(-1));
        CHECK(n + c.gamma * c.r - Rational(1) -
                  c.kappa * c.q * (c.p - Rational(1)) / (c.q - c.p) <
              Rational(-1));
    }
}

TEST_CASE("dilation residual: zero on the valid family") {
    const CknParams c1 = derive(raw(4, Rational(2), Rational(5, 2), Rational(1)));
    CHECK(ckn::dilation_residual_exact(c1) == Rational(0));
    const CknParams c2 = derive(raw(4, Rational(2), Rational(3), Rational(1)));
    CHECK(ckn::dilation_residual_exact(c2) == Rational(0));
    for (const auto& candidate : random_valid_params(25, 7u))
        CHECK(ckn::dilation_residual_exact(derive(candidate)) == Rational(0));
}

TEST_CASE("dilation residual: linear in a gamma perturbation") {
    CknParams c = derive(raw(4, Rational(2), Rational(5, 2), Rational(1)));
    c.gamma += Rational(1, 10);
    CHECK(ckn::dilation_residual_exact(c) == Rational(1, 10));
    CHECK(ckn::dilation_residual(c) == doctest::Approx(0.1).epsilon(1e-15));
}
