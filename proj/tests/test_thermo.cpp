#include "doctest.h"

#include <cmath>

#include "qtherm/evolution.hpp"
#include "qtherm/models.hpp"
#include "qtherm/random_states.hpp"
#include "qtherm/thermo.hpp"
#include "test_support.hpp"

using namespace qtherm;

TEST_CASE("heat current closed forms") {
  SUBCASE("2N at rho+ with a_N = 1/N gives J = N w0 Gd p_e") {
    const int n = 4;
    const TwoNModelSpec spec{n, 1.0, 1.0, 1.0};
    const BuiltModel bm = build_2n_model(spec);
    const PlusStateSpec plus(spec, 1.0 / n);
    const DensityMatrix rho = build_plus_state(plus);
    const double j = heat_current(bm.model, rho.mat());
    CHECK(j == doctest::Approx(n * spec.omega0 * spec.gamma_down * plus.p_e()).epsilon(1e-12));
  }

  SUBCASE("single-bath Gibbs state carries no current") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    const Eigen::Vector4d p = oracle::two_qubit_gibbs_populations(0.6, 1.0, 2.0);
    Mat gibbs = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) gibbs(i, i) = p[i];
    CHECK(std::abs(heat_current(bm.model, gibbs)) < 1e-10);
  }

  SUBCASE("two-qubit current formula on a random state") {
    const TwoQubitSpec spec{1.3, 0.8, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    Rng rng(31);
    const Mat rho = random_density_matrix(4, rng).mat();
    const double gd = spec.gamma_down(), gu = spec.gamma_up();
    const double expected =
        spec.omega * (2.0 * gu * rho(0, 0).real() - 2.0 * gd * rho(3, 3).real() +
                      (gu - gd) * (rho(1, 1).real() + rho(2, 2).real() + 2.0 * rho(1, 2).real()));
    CHECK(heat_current(bm.model, rho) == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("Tr[H D[rho]] equals the jump-rate sum formula") {
    const TwoBathTwoN tb = build_two_bath_2n({3, 1.1, TwoBathVariant::chemical_potential, 0.8});
    Rng rng(32);
    const Mat rho = random_density_matrix(tb.model.dim(), rng).mat();
    const double lhs = heat_current(tb.model, rho);
    const double rhs = oracle::heat_current_sum_formula(tb.model, rho);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("entropy rate") {
  SUBCASE("stationary state has zero entropy rate") {
    const TwoBathTwoN tb = build_two_bath_2n({4, 1.0, TwoBathVariant::temperature, 1.0});
    const EntropyRate s = entropy_rate(tb.model, tb.steady.mat());
    CHECK(std::abs(s.value) < 1e-9);
    CHECK(!s.divergent);
  }

  SUBCASE("maximally mixed state has zero entropy rate") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    const Mat mixed = Mat::Identity(4, 4) / 4.0;
    CHECK(std::abs(entropy_rate(bm.model, mixed).value) < 1e-10);
  }

  SUBCASE("matches the finite difference of the von Neumann entropy") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    // Mid-relaxation state: short evolution from a Gibbs-perturbed start.
    Mat rho0 = Mat::Zero(4, 4);
    rho0.diagonal() << 0.5, 0.2, 0.2, 0.1;
    const Trajectory traj =
        evolve(bm.model, DensityMatrix(rho0), {.dt = 1e-3, .max_time = 0.5, .record_stride = 500});
    const Mat rho = traj.states.back();

    const double delta = 1e-4;
    const Mat fwd = rk4_step(bm.model, rho, delta);
    const Mat bwd = rk4_step(bm.model, rho, -delta);
    const double fd = (von_neumann_entropy(fwd) - von_neumann_entropy(bwd)) / (2.0 * delta);
    CHECK(entropy_rate(bm.model, rho).value == doctest::Approx(fd).epsilon(1e-5));
  }

  SUBCASE("flux into an unoccupied level sets the divergence flag") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    Mat ground = Mat::Zero(4, 4);
    ground(0, 0) = 1.0;
    CHECK(entropy_rate(bm.model, ground).divergent);
  }
}

TEST_CASE("entropy production rate closed forms") {
  SUBCASE("2N at rho+ reproduces N log(1+1/N) Gd p_e") {
    const int n = 8;
    const TwoNModelSpec spec{n, 1.0, 1.0, 1.0};
    const BuiltModel bm = build_2n_model(spec);
    const PlusStateSpec plus(spec, 1.0 / n);
    const DensityMatrix rho = build_plus_state(plus);
    const EntropyRate s = entropy_production_rate(bm.model, rho.mat());
    const double expected = n * std::log1p(1.0 / n) * spec.gamma_down * plus.p_e();
    CHECK(!s.divergent);
    CHECK(s.value == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("Gibbs state produces no entropy") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    const Eigen::Vector4d p = oracle::two_qubit_gibbs_populations(0.6, 1.0, 2.0);
    Mat gibbs = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) gibbs(i, i) = p[i];
    CHECK(std::abs(entropy_production_rate(bm.model, gibbs).value) < 1e-9);
  }

  SUBCASE("two-bath steady state closed form, both variants") {
    for (const TwoBathVariant variant :
         {TwoBathVariant::temperature, TwoBathVariant::chemical_potential}) {
      const TwoBathTwoN tb = build_two_bath_2n({8, 1.0, variant, 1.0});
      const EntropyRate s = entropy_production_rate(tb.model, tb.steady.mat());
      CHECK(s.value == doctest::Approx(tb.analytic_sigma_dot).epsilon(1e-9));
    }
  }
}

TEST_CASE("Pauli entropy production") {
  SUBCASE("vanishes at detailed-balance equilibrium") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    const Eigen::Vector4d p = oracle::two_qubit_gibbs_populations(0.6, 1.0, 2.0);
    Mat gibbs = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) gibbs(i, i) = p[i];
    const EntropyRate s = pauli_entropy_production(bm.model, gibbs, bm.basis);
    CHECK(std::abs(s.value) < 1e-12);
    CHECK(!s.divergent);
  }

  SUBCASE("matches the definitional form at rho+") {
    const int n = 5;
    const TwoNModelSpec spec{n, 1.0, 1.0, 1.0};
    const BuiltModel bm = build_2n_model(spec);
    const DensityMatrix rho = build_plus_state(PlusStateSpec(spec, 1.0 / n));
    const double pauli = pauli_entropy_production(bm.model, rho.mat(), bm.basis).value;
    const double defn = entropy_production_rate(bm.model, rho.mat()).value;
    CHECK(pauli == doctest::Approx(defn).epsilon(1e-8));
  }

  SUBCASE("matches the definitional form along a two-qubit trajectory") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    Mat rho0 = Mat::Zero(4, 4);
    rho0.diagonal() << 0.4, 0.25, 0.25, 0.1;
    const Trajectory traj =
        evolve(bm.model, DensityMatrix(rho0), {.dt = 1e-3, .max_time = 2.0, .record_stride = 200});
    for (const Mat& rho : traj.states) {
      const double pauli = pauli_entropy_production(bm.model, rho, bm.basis).value;
      const double defn = entropy_production_rate(bm.model, rho).value;
      CHECK(std::abs(pauli - defn) < 1e-8 * std::max(1.0, std::abs(defn)));
    }
  }

  SUBCASE("rejects non-block-diagonal input") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    Rng rng(41);
    const Mat rho = random_density_matrix(4, rng).mat();  // has cross-block coherence
    CHECK_THROWS_AS(pauli_entropy_production(bm.model, rho, bm.basis), std::invalid_argument);
  }
}

TEST_CASE("transition rate table detailed-balance symmetry") {
  SUBCASE("thermal bath: W(w)_{mn} = e^{beta hbar w} W(-w)_{nm}") {
    const TwoNModelSpec spec{3, 1.2, 0.7, 0.9};
    const BuiltModel bm = build_2n_model(spec);
    Rng rng(43);
    const DensityMatrix rho = random_block_diagonal_state(bm.basis, rng);
    const TransitionRateTable table = transition_rate_table(bm.model, rho.mat(), bm.basis);
    REQUIRE(table.channels.size() == 2);
    for (const auto& ch : table.channels) {
      REQUIRE(ch.partner >= 0);
      const auto& rev = table.channels[ch.partner];
      const double factor = std::exp(ch.affinity);
      for (int m = 0; m < bm.model.dim(); ++m)
        for (int n = 0; n < bm.model.dim(); ++n) {
          const double lhs = ch.w(m, n);
          const double rhs = factor * rev.w(n, m);
          if (lhs > 1e-12 || rhs > 1e-12)
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(std::abs(lhs), std::abs(rhs)));
        }
    }
  }

  SUBCASE("chemical bath affinity carries beta(hbar w - mu)") {
    const TwoBathTwoN tb = build_two_bath_2n({2, 1.0, TwoBathVariant::chemical_potential, 1.0});
    Rng rng(44);
    const DensityMatrix rho = random_block_diagonal_state(tb.basis, rng);
    const TransitionRateTable table = transition_rate_table(tb.model, rho.mat(), tb.basis);
    for (const auto& ch : table.channels) {
      REQUIRE(ch.partner >= 0);
      const auto& rev = table.channels[ch.partner];
      const double factor = std::exp(ch.affinity);
      for (int m = 0; m < tb.model.dim(); ++m)
        for (int n = 0; n < tb.model.dim(); ++n) {
          const double lhs = ch.w(m, n);
          const double rhs = factor * rev.w(n, m);
          if (lhs > 1e-12 || rhs > 1e-12)
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(std::abs(lhs), std::abs(rhs)));
        }
    }
  }
}

TEST_CASE("tradeoff check") {
  SUBCASE("diagonal states make all three ratios coincide") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    Mat rho = Mat::Zero(4, 4);
    rho.diagonal() << 0.4, 0.25, 0.25, 0.1;
    const TradeoffRecord rec = tradeoff_check(bm.model, rho, bm.basis);
    CHECK(rec.ratio_rho == doctest::Approx(rec.ratio_bd).epsilon(1e-12));
    CHECK(rec.ratio_rho == doctest::Approx(rec.ratio_sd).epsilon(1e-12));
    CHECK(rec.ineq2_ok);
    CHECK(rec.ineq3_ok);
    CHECK(rec.ineq4_ok);
  }

  SUBCASE("random block-diagonal states on the 2N model satisfy every inequality") {
    const TwoNModelSpec spec{4, 1.0, 1.0, 1.0};
    const BuiltModel bm = build_2n_model(spec);
    Rng rng(77);
    for (int k = 0; k < 200; ++k) {
      const DensityMatrix rho = random_block_diagonal_state(bm.basis, rng);
      const TradeoffRecord rec = tradeoff_check(bm.model, rho.mat(), bm.basis);
      CHECK(rec.ineq2_ok);
      CHECK(rec.ineq3_ok);
      CHECK(rec.ineq4_ok);
      // Independent recomputation of inequality (4)'s two sides by the
      // jump-rate sum current and the Pauli-form entropy production.
      const Mat bd = block_diagonalize(rho.mat(), bm.basis);
      const double j = oracle::heat_current_sum_formula(bm.model, bd);
      const double sig = pauli_entropy_production(bm.model, bd, bm.basis).value;
      const CoherenceReport coh = coherence_report(bm.model, rho.mat(), bm.basis);
      CHECK(2.0 * j * j <=
            (coh.a_cl + coh.a_qm) * sig + 1e-9 * std::max(1.0, (coh.a_cl + coh.a_qm) * sig));
    }
  }
}

TEST_CASE("thermo sample assembles per-bath currents and flags") {
  const TwoBathTwoN tb = build_two_bath_2n({2, 1.0, TwoBathVariant::temperature, 1.0});
  const ThermoSample s = thermo_sample(tb.model, tb.steady.mat(), tb.basis, 1.5);
  CHECK(s.t == 1.5);
  REQUIRE(s.j_per_bath.size() == 2);
  CHECK(s.j_per_bath[0].first == "H");
  CHECK(s.j_per_bath[0].second == doctest::Approx(tb.analytic_j_hot).epsilon(1e-10));
  CHECK(s.j_per_bath[1].second == doctest::Approx(-tb.analytic_j_hot).epsilon(1e-10));
  CHECK(std::abs(s.j_total) < 1e-10);
  CHECK(s.sigma_dot == doctest::Approx(tb.analytic_sigma_dot).epsilon(1e-9));
  // J_total = 0 with sigma > 0: the ratio is zero, not divergent.
  CHECK(!s.ratio_divergent);
  CHECK(s.ratio < 1e-15);
}
