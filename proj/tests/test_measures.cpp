#include <doctest.h>

#include <cmath>
#include <complex>

#include "weylclt/char_fn.hpp"
#include "weylclt/measures.hpp"
#include "weylclt/rng.hpp"

using namespace weylclt;

TEST_CASE("spectral measure: z = 0 gives the Dirac measure at zero") {
  const auto state = make_state(FockSpaceSpec(1, 8), GinibreParams{3});
  const auto mu = spectral_measure(state, PhaseVector::zero(1));
  REQUIRE(mu.atoms.size() == 1);
  CHECK(mu.atoms[0].value == 0.0);
  CHECK(mu.atoms[0].weight == doctest::Approx(1.0));
  CHECK(mean(mu) == 0.0);
  CHECK(second_moment(mu) == 0.0);
  CHECK(variance(mu) == 0.0);
}

TEST_CASE("spectral measure: vacuum momentum distribution has variance one half") {
  const auto vac = make_state(FockSpaceSpec(1, 24), VacuumParams{});
  const auto mu = spectral_measure(vac, PhaseVector{1, 0});
  CHECK(std::abs(mu.total_weight() - 1.0) <= 1e-10);
  CHECK(std::abs(mean(mu)) <= 1e-12);
  CHECK(variance(mu) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("spectral measure: first excited state second moment is 3/2") {
  const auto one = make_state(FockSpaceSpec(1, 24), NumberParams{{1}});
  const auto mu = spectral_measure(one, PhaseVector{1, 0});
  CHECK(second_moment(mu) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(mean(mu)) <= 1e-12);
}

TEST_CASE("spectral measure: transform consistency along rays") {
  // sum_i w_i e^{i t lambda_i} equals the characteristic function at t z
  const auto state = make_state(FockSpaceSpec(1, 40), GinibreParams{17});
  const CharFn f = CharFn::from_state(state);
  const PhaseVector z{0.6, 0.8};
  const auto mu = spectral_measure(state, z);
  for (double t = -2.0; t <= 2.0; t += 0.5) {
    Complex from_measure(0.0, 0.0);
    for (const auto& atom : mu.atoms) {
      from_measure += atom.weight * std::exp(Complex(0.0, t * atom.value));
    }
    CHECK(std::abs(from_measure - f(z * t)) <= 1e-8);
  }
}

TEST_CASE("moments: simple atomic measures") {
  DiscreteMeasure mu;
  mu.atoms = {{-1.0, 0.5}, {1.0, 0.5}};
  CHECK(mean(mu) == 0.0);
  CHECK(second_moment(mu) == 1.0);
  CHECK(variance(mu) == 1.0);

  DiscreteMeasure shifted;
  shifted.atoms = {{1.0, 0.25}, {3.0, 0.75}};
  CHECK(mean(shifted) == doctest::Approx(2.5));
  CHECK(variance(shifted) == doctest::Approx(0.75));
}

TEST_CASE("mean vector: vacuum and the maximally mixed state are centered") {
  const auto vac = make_state(FockSpaceSpec(1, 12), VacuumParams{});
  CHECK(mean_vector(vac).norm() <= 1e-12);

  const ProbabilityOperator mixed(FockSpaceSpec(1, 6),
                                  Eigen::MatrixXcd::Identity(6, 6) / 6.0);
  CHECK(mean_vector(mixed).norm() <= 1e-12);
}

TEST_CASE("mean vector: coherent state recovers its translation vector") {
  const double u = 0.45, v = -0.8;
  const Complex alpha = Complex(v, u) / std::sqrt(2.0);
  const auto coh = make_state(FockSpaceSpec(1, 40), CoherentParams{{alpha}});
  const PhaseVector m = mean_vector(coh);
  CHECK(std::abs(m.x(0) - u) <= 1e-6);
  CHECK(std::abs(m.y(0) - v) <= 1e-6);
}

TEST_CASE("component decomposition: splits and sums back") {
  const auto single = component_decomposition(PhaseVector{1, 2});
  REQUIRE(single.size() == 1);
  CHECK(single[0].coords() == (Eigen::VectorXd(2) << 1, 2).finished());

  const auto parts = component_decomposition(PhaseVector{1, 2, 3, 4});
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].coords() == (Eigen::VectorXd(4) << 1, 2, 0, 0).finished());
  CHECK(parts[1].coords() == (Eigen::VectorXd(4) << 0, 0, 3, 4).finished());

  Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXd c(6);
    for (int i = 0; i < 6; ++i) c[i] = rng.normal();
    const PhaseVector z(c);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(6);
    for (const auto& part : component_decomposition(z)) sum += part.coords();
    CHECK((sum - c).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("commuting family: distinct tensor factors commute exactly") {
  const FockSpaceSpec spec(2, 5);
  Rng rng(56);
  for (int t = 0; t < 5; ++t) {
    const PhaseVector z{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    const auto report = commuting_family_check(spec, z);
    CHECK(report.max_commutator == 0.0);
    CHECK(report.additivity_residual <= 1e-13);
  }
}

TEST_CASE("commuting family: single mode is vacuous") {
  const auto report = commuting_family_check(FockSpaceSpec(1, 6), PhaseVector{0.5, -0.5});
  CHECK(report.max_commutator == 0.0);
  CHECK(report.additivity_residual <= 1e-13);
}

TEST_CASE("moment inequality: single mode is an equality") {
  const auto state = make_state(FockSpaceSpec(1, 10), GinibreParams{4});
  const auto result = moment_inequality_check(state, PhaseVector{0.7, 0.3});
  CHECK(result.pass);
  CHECK(result.lhs == doctest::Approx(result.rhs).epsilon(1e-12));
}

TEST_CASE("moment inequality: product of two vacua at z = (1,0,1,0)") {
  const auto vac = make_state(FockSpaceSpec(2, 6), VacuumParams{});
  const auto result = moment_inequality_check(vac, PhaseVector{1, 0, 1, 0});
  CHECK(result.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(result.rhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(result.pass);
}

TEST_CASE("moment inequality: seeded two-mode sweep") {
  const FockSpaceSpec spec(2, 6);
  Rng rng(57);
  for (int t = 0; t < 50; ++t) {
    const auto state = make_state(spec, GinibreParams{9000 + static_cast<std::uint64_t>(t)});
    const PhaseVector z{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    CHECK(moment_inequality_check(state, z).pass);
  }
}

TEST_CASE("variance is nonnegative across seeded states and directions") {
  Rng rng(58);
  for (int t = 0; t < 30; ++t) {
    const auto state = make_state(FockSpaceSpec(1, 12),
                                  GinibreParams{400 + static_cast<std::uint64_t>(t)});
    const PhaseVector z{rng.normal(), rng.normal()};
    CHECK(variance(spectral_measure(state, z)) >= 0.0);
  }
}

TEST_CASE("spectral measure: degenerate eigenvalues merge") {
  // R((1,1)/sqrt 2-ish direction) on a two-mode space has exact degeneracies;
  // merged atoms must still carry total weight one
  const auto state = make_state(FockSpaceSpec(2, 4), VacuumParams{});
  const auto mu = spectral_measure(state, PhaseVector{1, 0, 1, 0});
  CHECK(std::abs(mu.total_weight() - 1.0) <= 1e-10);
  CHECK(static_cast<long>(mu.atoms.size()) < FockSpaceSpec(2, 4).dim());
  for (std::size_t i = 1; i < mu.atoms.size(); ++i) {
    CHECK(mu.atoms[i].value > mu.atoms[i - 1].value);
  }
}
