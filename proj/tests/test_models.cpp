#include "doctest.h"

#include <cmath>

#include "qtherm/evolution.hpp"
#include "qtherm/generator.hpp"
#include "qtherm/models.hpp"
#include "qtherm/random_states.hpp"
#include "qtherm/thermo.hpp"
#include "test_support.hpp"

using namespace qtherm;

TEST_CASE("2N model construction") {
  SUBCASE("N = 1 reduces to amplitude damping with rho_bd = rho_sd") {
    const BuiltModel bm = build_2n_model({1, 1.0, 1.0, 1.0});
    CHECK(bm.model.dim() == 2);
    CHECK(validate_model(bm.model).all_pass());
    Rng rng(3);
    const Mat rho = random_density_matrix(2, rng).mat();
    CHECK(max_abs(block_diagonalize(rho, bm.basis) - strict_diagonalize(rho, bm.basis)) <
          1e-15);
  }

  SUBCASE("N = 2 collective decay has four unit matrix elements") {
    const BuiltModel bm = build_2n_model({2, 1.0, 1.0, 1.0});
    const JumpChannel& decay = bm.model.baths[0].channels[0];
    CHECK(decay.omega == doctest::Approx(1.0));
    int nonzero = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (decay.op(i, j) != Complex(0.0)) {
          ++nonzero;
          CHECK(decay.op(i, j) == Complex(1.0));
          CHECK(i < 2);   // ground row
          CHECK(j >= 2);  // excited column
        }
    CHECK(nonzero == 4);
  }

  SUBCASE("eigenoperator residual is tiny for any N") {
    const BuiltModel bm = build_2n_model({5, 1.7, 0.6, 1.1});
    for (const auto& ch : bm.model.baths[0].channels) {
      const Mat defect = commutator(ch.op, bm.model.hamiltonian) -
                         Complex(bm.model.hbar * ch.omega) * ch.op;
      CHECK(max_abs(defect) < 1e-12);
    }
    CHECK(validate_model(bm.model).all_pass());
  }

  SUBCASE("invalid specs are rejected") {
    CHECK_THROWS_AS(build_2n_model({0, 1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_2n_model({2, 1.0, -1.0, 1.0}), std::invalid_argument);
  }
}

TEST_CASE("plus state construction") {
  SUBCASE("N = 1 is diagonal") {
    const DensityMatrix rho = build_plus_state(PlusStateSpec{TwoNModelSpec{1, 1.0, 1.0, 1.0}, 0.5});
    CHECK(std::abs(rho.mat()(0, 1)) == 0.0);
  }

  SUBCASE("N = 2, a = 1/2, beta = 1, w0 = 1: p_g/p_e = 1.5 e") {
    const PlusStateSpec spec{TwoNModelSpec{2, 1.0, 1.0, 1.0}, 0.5};
    const DensityMatrix rho = build_plus_state(spec);
    CHECK(spec.p_g() / spec.p_e() == doctest::Approx(1.5 * std::exp(1.0)).epsilon(1e-14));
    // Each block has all entries p/2.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        CHECK(rho.mat()(i, j).real() == doctest::Approx(spec.p_g() / 2).epsilon(1e-14));
        CHECK(rho.mat()(2 + i, 2 + j).real() == doctest::Approx(spec.p_e() / 2).epsilon(1e-14));
        CHECK(std::abs(rho.mat()(i, 2 + j)) == 0.0);
      }
  }

  SUBCASE("trace one and rank-two spectrum") {
    const PlusStateSpec spec{TwoNModelSpec{5, 1.0, 1.0, 0.7}, 0.3};
    const DensityMatrix rho = build_plus_state(spec);
    CHECK(std::abs(rho.mat().trace() - Complex(1.0)) < 1e-14);
    Eigen::VectorXd ev = hermitian_eigenvalues(rho.mat());
    std::sort(ev.data(), ev.data() + ev.size());
    CHECK(ev[ev.size() - 1] == doctest::Approx(spec.p_g()).epsilon(1e-13));
    CHECK(ev[ev.size() - 2] == doctest::Approx(spec.p_e()).epsilon(1e-13));
    for (Eigen::Index i = 0; i + 2 < ev.size(); ++i) CHECK(std::abs(ev[i]) < 1e-14);
  }
}

TEST_CASE("analytic 2N observables") {
  SUBCASE("a_N = 1/N reduces to the dissipation-less current forms") {
    const TwoNModelSpec ms{6, 1.0, 1.0, 1.0};
    const PlusStateSpec ps(ms, 1.0 / 6.0);
    const AnalyticObservables obs = analytic_2n_observables(ms, ps);
    CHECK(obs.j == doctest::Approx(6.0 * ps.p_e()).epsilon(1e-14));
    CHECK(obs.sigma_dot ==
          doctest::Approx(6.0 * std::log1p(1.0 / 6.0) * ps.p_e()).epsilon(1e-14));
  }

  SUBCASE("a_N = 0 is stationary") {
    const TwoNModelSpec ms{3, 1.0, 1.0, 1.0};
    const AnalyticObservables obs = analytic_2n_observables(ms, PlusStateSpec(ms, 0.0));
    CHECK(obs.j == 0.0);
    CHECK(obs.sigma_dot == 0.0);
  }

  SUBCASE("cross-check against the matrix computation at N = 8") {
    const TwoNModelSpec ms{8, 1.0, 1.0, 1.0};
    const PlusStateSpec ps(ms, 1.0 / 8.0);
    const BuiltModel bm = build_2n_model(ms);
    const DensityMatrix rho = build_plus_state(ps);
    const AnalyticObservables obs = analytic_2n_observables(ms, ps);
    CHECK(heat_current(bm.model, rho.mat()) == doctest::Approx(obs.j).epsilon(1e-10));
    CHECK(entropy_production_rate(bm.model, rho.mat()).value ==
          doctest::Approx(obs.sigma_dot).epsilon(1e-10));
  }
}

TEST_CASE("two-qubit model") {
  SUBCASE("generator reproduces the superradiant ODEs on a 16-element basis") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    const BuiltModel bm = build_two_qubit_model(spec);
    const double gd = spec.gamma_down(), gu = spec.gamma_up();

    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        // Hermitian basis element: E_aa, or (E_ab + E_ba), or i(E_ab - E_ba).
        Mat basis_re = Mat::Zero(4, 4), basis_im = Mat::Zero(4, 4);
        basis_re(a, b) += 1.0;
        basis_re(b, a) += 1.0;
        basis_im(a, b) += Complex(0, 1);
        basis_im(b, a) += Complex(0, -1);
        for (const Mat& rho : {basis_re, basis_im}) {
          if (max_abs(rho) == 0.0) continue;
          const Mat g = apply_generator(bm.model, rho);
          const auto rhs = oracle::two_qubit_ode_rhs(rho, gd, gu);
          CHECK(std::abs(g(0, 0) - rhs.d00) < 1e-12);
          CHECK(std::abs(g(1, 1) - rhs.d11) < 1e-12);
          CHECK(std::abs(g(2, 2) - rhs.d22) < 1e-12);
          CHECK(std::abs(g(3, 3) - rhs.d33) < 1e-12);
          CHECK(std::abs(g(1, 2) - rhs.d12) < 1e-12);
        }
      }
    }
  }

  SUBCASE("rates at Gamma0 = 1, beta = 0.6, omega = 2") {
    const TwoQubitSpec spec{2.0, 0.6, 1.0};
    CHECK(spec.gamma_down() == doctest::Approx(1.0 / (1.0 + std::exp(-1.2))).epsilon(1e-15));
    CHECK(spec.gamma_up() == doctest::Approx(1.0 / (1.0 + std::exp(1.2))).epsilon(1e-15));
    CHECK(spec.gamma_down() / spec.gamma_up() ==
          doctest::Approx(std::exp(1.2)).epsilon(1e-12));
    CHECK(validate_model(build_two_qubit_model(spec).model).all_pass());
  }

  SUBCASE("quench Hamiltonians commute") {
    const BuiltModel hot = build_two_qubit_model({2.0, 0.6, 1.0});
    const BuiltModel cold = build_two_qubit_model({1.0, 1.5, 1.0});
    CHECK(max_abs(commutator(hot.model.hamiltonian, cold.model.hamiltonian)) == 0.0);
  }
}

TEST_CASE("two-bath 2N model") {
  SUBCASE("steady state residual, currents, and entropy production") {
    for (const TwoBathVariant variant :
         {TwoBathVariant::temperature, TwoBathVariant::chemical_potential}) {
      for (int n : {2, 8, 32}) {
        const TwoBathTwoN tb = build_two_bath_2n({n, 1.0, variant, 1.0});
        CHECK(validate_model(tb.model).all_pass());
        CHECK(max_abs(apply_generator(tb.model, tb.steady.mat())) < 1e-10);

        const double jh = heat_current(tb.model, tb.steady.mat(), tb.model.baths[0].label);
        const double jc = heat_current(tb.model, tb.steady.mat(), tb.model.baths[1].label);
        CHECK(jh == doctest::Approx(tb.analytic_j_hot).epsilon(1e-11));
        CHECK(jh + jc == doctest::Approx(0.0).epsilon(1e-11));

        CHECK(entropy_production_rate(tb.model, tb.steady.mat()).value ==
              doctest::Approx(tb.analytic_sigma_dot).epsilon(1e-9));
      }
    }
  }

  SUBCASE("matching condition holds to 1e-12") {
    const TwoBathTwoN tb = build_two_bath_2n({4, 1.3, TwoBathVariant::temperature, 1.0});
    const double lhs =
        (tb.model.baths[1].beta - tb.model.baths[0].beta) * tb.model.hbar * 1.3;
    const double rhs = std::log((1.0 + 0.25) / (1.0 - 0.25));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

    const TwoBathTwoN chem = build_two_bath_2n({4, 1.3, TwoBathVariant::chemical_potential, 1.0});
    const double lhs_mu =
        chem.model.baths[0].beta * (chem.model.baths[0].mu - chem.model.baths[1].mu);
    CHECK(lhs_mu == doctest::Approx(rhs).epsilon(1e-12));
  }

  SUBCASE("N = 1 is rejected") {
    CHECK_THROWS_AS(build_two_bath_2n({1, 1.0, TwoBathVariant::temperature, 1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("formulas carry hbar explicitly") {
  // Same physics in a different unit convention: hbar = 2 with the energy
  // gap hbar*omega0 and all rates fixed.
  const TwoNModelSpec ms{3, 0.7, 0.9, 0.8, /*hbar=*/2.0};
  const PlusStateSpec ps(ms, 1.0 / 3.0);
  const BuiltModel bm = build_2n_model(ms);
  CHECK(validate_model(bm.model).all_pass());

  const DensityMatrix rho = build_plus_state(ps);
  const AnalyticObservables ref = analytic_2n_observables(ms, ps);
  CHECK(heat_current(bm.model, rho.mat()) == doctest::Approx(ref.j).epsilon(1e-11));
  CHECK(entropy_production_rate(bm.model, rho.mat()).value ==
        doctest::Approx(ref.sigma_dot).epsilon(1e-10));
  CHECK(pauli_entropy_production(bm.model, rho.mat(), bm.basis).value ==
        doctest::Approx(ref.sigma_dot).epsilon(1e-8));

  // X carries (hbar*omega)^2.
  const CoherenceReport rep = coherence_report(bm.model, rho.mat(), bm.basis);
  const double hw2 = (2.0 * 0.7) * (2.0 * 0.7);
  CHECK(rep.c_x == doctest::Approx(hw2 * 0.9 * 3).epsilon(1e-12));
  CHECK(rep.a_qm == doctest::Approx(hw2 * 0.9 * 3 * 2).epsilon(1e-11));
}

TEST_CASE("2N scaling law across N") {
  // J/(N p_e) is N-independent and sigma/(Gd p_e) = N log(1+1/N) rises
  // monotonically toward 1.
  double prev_norm_sigma = 0.0;
  for (int n : {1, 2, 4, 8, 16, 32}) {
    const TwoNModelSpec ms{n, 1.0, 1.0, 1.0};
    const PlusStateSpec ps(ms, 1.0 / n);
    const BuiltModel bm = build_2n_model(ms);
    const DensityMatrix rho = build_plus_state(ps);

    const double j = heat_current(bm.model, rho.mat());
    const double sigma = entropy_production_rate(bm.model, rho.mat()).value;
    CHECK(j / (n * ps.p_e()) == doctest::Approx(1.0).epsilon(1e-8));

    const double norm_sigma = sigma / ps.p_e();
    CHECK(norm_sigma < 1.0);
    CHECK(norm_sigma > prev_norm_sigma);
    prev_norm_sigma = norm_sigma;
  }
}
