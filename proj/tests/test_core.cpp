// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bhevap/core.hpp"
#include "bhevap/rng.hpp"
#include "oracles.hpp"

using namespace bhevap;

namespace {

double rel_dev(double value, double reference) {
    if (reference == 0.0) return std::abs(value);
    return std::abs(value - reference) / std::abs(reference);
}

} // namespace

TEST_CASE("black hole state derives area and entropy from the mass") {
    const BlackHoleState one(1.0);
    CHECK(one.bh_entropy() == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(one.horizon_area() == 4.0 * one.bh_entropy()); // exact by design
    CHECK(one.horizon_area() ==
          doctest::Approx(16.0 * kPi).epsilon(1e-15));

    const BlackHoleState two(2.0);
    CHECK(two.bh_entropy() == doctest::Approx(16.0 * kPi).epsilon(1e-15));

    // homogeneity: scaling the mass by k scales the entropy by k^2
    RngStream rng(11, 0);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.1 + 10.0 * rng.next_open01();
        const double k = 0.5 + 4.0 * rng.next_open01();
        CHECK(rel_dev(BlackHoleState(k * m).bh_entropy(),
                      k * k * BlackHoleState(m).bh_entropy()) < 1e-14);
    }

    CHECK_THROWS_AS(BlackHoleState{0.0}, std::domain_error);
    CHECK_THROWS_AS(BlackHoleState{-1.0}, std::domain_error);
    CHECK_THROWS_AS(BlackHoleState{std::nan("")}, std::domain_error);
    CHECK_THROWS_AS(BlackHoleState{INFINITY}, std::domain_error);
}

TEST_CASE("delta_s matches the tunneling exponent") {
    const BlackHoleState one(1.0);

    CHECK(delta_s(one, 0.0).log_value == 0.0); // probability 1

    // full exhaustion: exactly minus the hole entropy
    const double boundary = delta_s(one, 1.0).log_value;
    CHECK(boundary == -one.bh_entropy());
    CHECK(boundary == doctest::Approx(-12.566370614359172).epsilon(1e-15));

    const double half = delta_s(one, 0.5).log_value;
    CHECK(half == doctest::Approx(-3.0 * kPi).epsilon(1e-14));
    // independent extended-precision evaluation
    CHECK(rel_dev(half, static_cast<double>(oracles::conditional_log_prob_ld(
                            1.0, {}, 0.5))) < 1e-15);

    CHECK_THROWS_WITH_AS(delta_s(one, 1.5), "emission exceeds remaining mass",
                         std::domain_error);
    CHECK_THROWS_AS(delta_s(one, -0.1), std::domain_error);
    CHECK_THROWS_AS(delta_s(one, std::nan("")), std::domain_error);

    // nonpositive for all admissible energies, zero only at E = 0
    RngStream rng(12, 0);
    for (int i = 0; i < 500; ++i) {
        const double m = 0.1 + 30.0 * rng.next_open01();
        const double e = m * rng.next_open01();
        const double v = delta_s(BlackHoleState(m), e).log_value;
        CHECK(v <= 0.0);
        CHECK((e == 0.0 || v < 0.0));
    }
}

TEST_CASE("log probabilities convert to linear probabilities explicitly") {
    const BlackHoleState one(1.0);
    CHECK(delta_s(one, 0.5).linear() ==
          doctest::Approx(std::exp(-3.0 * kPi)).epsilon(1e-14));
    CHECK(joint_log_prob(one, {}).linear() == 1.0);
    // documented lossiness: underflows once 4*pi*M^2 exceeds ~745
    const BlackHoleState heavy(16.0);
    CHECK(delta_s(heavy, 16.0).linear() == 0.0);
}

TEST_CASE("joint probability depends on the total energy only") {
    const BlackHoleState one(1.0);
    const std::vector<double> ab{0.3, 0.2};
    const std::vector<double> ba{0.2, 0.3};

    CHECK(joint_log_prob(one, ab).log_value ==
          doctest::Approx(-3.0 * kPi).epsilon(1e-14));
    CHECK(rel_dev(joint_log_prob(one, ab).log_value,
                  joint_log_prob(one, ba).log_value) < 1e-15);
    CHECK(joint_log_prob(one, {}).log_value == 0.0);

    CHECK_THROWS_AS(joint_log_prob(one, std::vector<double>{0.6, 0.6}),
                    std::domain_error);
    CHECK_THROWS_AS(joint_log_prob(one, std::vector<double>{-0.1}),
                    std::domain_error);

    // random re-partitions of a fixed total agree with delta_s of the total
    RngStream rng(13, 0);
    for (int i = 0; i < 500; ++i) {
        const double m = 0.1 + 50.0 * rng.next_open01();
        const double total = 0.9 * m * rng.next_open01();
        std::vector<double> cuts{0.0, total};
        const int parts = 2 + static_cast<int>(rng.next_open01() * 15);
        for (int k = 0; k < parts - 1; ++k)
            cuts.push_back(total * rng.next_open01());
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> energies;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            energies.push_back(cuts[k + 1] - cuts[k]);
        const BlackHoleState state(m);
        CHECK(rel_dev(joint_log_prob(state, energies).log_value,
                      delta_s(state, total).log_value) < 1e-12);
    }
}

TEST_CASE("conditional probability equals delta_s at the remaining mass") {
    const BlackHoleState one(1.0);
    CHECK(conditional_log_prob(one, {}, 0.5).log_value ==
          delta_s(one, 0.5).log_value);

    const std::vector<double> half{0.5};
    CHECK(conditional_log_prob(one, half, 0.25).log_value ==
          doctest::Approx(-0.75 * kPi).epsilon(1e-14));

    const BlackHoleState ten(10.0);
    const std::vector<double> h13{1.0, 3.0};
    CHECK(conditional_log_prob(ten, h13, 2.0).log_value ==
          doctest::Approx(-80.0 * kPi).epsilon(1e-14));

    CHECK_THROWS_AS(conditional_log_prob(one, half, 0.6), std::domain_error);
}

TEST_CASE("closed-form conditional agrees with the Bayes ratio") {
    RngStream rng(14, 0);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double m = 0.1 * std::pow(1000.0, rng.next_open01());
        const int len = 1 + static_cast<int>(rng.next_open01() * 20);
        std::vector<double> history;
        double budget = 0.9;
        for (int k = 0; k < len; ++k) {
            const double f =
                std::max(budget * rng.next_open01() / 2.0, 1e-6);
            history.push_back(m * f);
            budget -= f;
        }
        const double e = m * std::max(budget * rng.next_open01(), 1e-6);
        const double closed =
            conditional_log_prob(BlackHoleState(m), history, e).log_value;
        const double bayes = static_cast<double>(
            oracles::conditional_log_prob_ld(m, history, e));
        worst = std::max(worst, rel_dev(closed, bayes));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("later identical emissions are more probable") {
    RngStream rng(15, 0);
    for (int i = 0; i < 500; ++i) {
        const double m = 0.5 + 20.0 * rng.next_open01();
        const double e = 0.05 * m;
        const double h1 = 0.4 * m * rng.next_open01();
        const double h2 = h1 + 0.4 * m * rng.next_open01() + 1e-9 * m;
        const std::vector<double> small{h1};
        const std::vector<double> large{h2};
        const BlackHoleState state(m);
        CHECK(conditional_log_prob(state, large, e).log_value >
              conditional_log_prob(state, small, e).log_value);
    }
}

TEST_CASE("markov violation equals 8 pi E1 E3") {
    const BlackHoleState one(1.0);
    CHECK(markov_violation(one, 0.1, 0.2, 0.3) ==
          doctest::Approx(0.24 * kPi).epsilon(1e-13));
    CHECK(markov_violation(one, 0.0, 0.2, 0.3) == 0.0);

    const BlackHoleState ten(10.0);
    CHECK(markov_violation(ten, 1.0, 3.0, 2.0) ==
          doctest::Approx(16.0 * kPi).epsilon(1e-13));

    CHECK_THROWS_AS(markov_violation(one, 0.5, 0.4, 0.3), std::domain_error);

    RngStream rng(16, 0);
    double worst_identity = 0.0;
    double worst_invariance = 0.0;
    double worst_vs_bayes = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double m = 0.1 * std::pow(1000.0, rng.next_open01());
        const double e1 = m * (1e-4 + 0.33 * rng.next_open01());
        const double e2 = m * (1e-4 + 0.33 * rng.next_open01());
        const double e3 = m * (1e-4 + 0.33 * rng.next_open01());
        const double mv = markov_violation(BlackHoleState(m), e1, e2, e3);
        worst_identity =
            std::max(worst_identity, rel_dev(mv, pair_correlation(e1, e3)));
        // independent of E2 and of the mass
        const double mv2 = markov_violation(BlackHoleState(2.5 * m), e1,
                                            0.5 * e2 + 1e-3 * m, e3);
        worst_invariance = std::max(worst_invariance, rel_dev(mv2, mv));
        worst_vs_bayes = std::max(
            worst_vs_bayes,
            rel_dev(mv, static_cast<double>(
                            oracles::markov_violation_ld(m, e1, e2, e3))));
    }
    CHECK(worst_identity < 1e-12);
    CHECK(worst_invariance < 1e-12);
    CHECK(worst_vs_bayes < 1e-12);
}

TEST_CASE("pair correlation is 8 pi E1 E2 and mass independent") {
    CHECK(pair_correlation(0.1, 0.3) ==
          doctest::Approx(0.24 * kPi).epsilon(1e-15));
    CHECK(pair_correlation(0.0, 0.3) == 0.0);
    CHECK(pair_correlation(0.3, 0.1) == pair_correlation(0.1, 0.3));

    CHECK_THROWS_AS(pair_correlation(-0.1, 0.3), std::domain_error);
    CHECK_THROWS_AS(pair_correlation(std::nan(""), 0.3), std::domain_error);

    RngStream rng(17, 0);
    for (int i = 0; i < 1000; ++i) {
        const double e1 = rng.next_open01();
        const double e2 = rng.next_open01();
        const double a = 0.25 + 2.0 * rng.next_open01();
        CHECK(pair_correlation(e1, e2) >= 0.0);
        // bilinear
        CHECK(rel_dev(pair_correlation(a * e1, e2),
                      a * pair_correlation(e1, e2)) < 1e-15);
        // definitional three-term route, evaluated at two different masses
        const double expected = pair_correlation(e1, e2);
        CHECK(rel_dev(pair_correlation_log_form(BlackHoleState(1.0 + e1 + e2),
                                                e1, e2),
                      expected) < 1e-12);
        CHECK(rel_dev(pair_correlation_log_form(BlackHoleState(5.0 + e1 + e2),
                                                e1, e2),
                      expected) < 1e-12);
    }
    CHECK(rel_dev(pair_correlation_log_form(BlackHoleState(1.0), 0.1, 0.3),
                  0.24 * kPi) < 1e-13);
}

TEST_CASE("emission sequences validate and derive the mass trajectory") {
    EmissionSequence seq(2.0, {1.0, 0.5, 0.5});
    CHECK(seq.size() == 3);
    CHECK(seq.remaining_masses() == std::vector<double>{2.0, 1.0, 0.5, 0.0});
    CHECK(seq.is_exhausting());

    EmissionSequence partial(2.0, {1.0});
    CHECK_FALSE(partial.is_exhausting());
    CHECK(partial.remaining_masses().back() == 1.0);

    CHECK_THROWS_AS(EmissionSequence(1.0, {0.0}), std::domain_error);
    CHECK_THROWS_AS(EmissionSequence(1.0, {-0.5}), std::domain_error);
    CHECK_THROWS_AS(EmissionSequence(1.0, {0.6, 0.6}), std::domain_error);
    CHECK_THROWS_AS(EmissionSequence(1.0, {1e-16}), std::domain_error);
    CHECK_THROWS_AS(EmissionSequence(-1.0, {0.5}), std::domain_error);
}
