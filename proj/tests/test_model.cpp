#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qar/model.hpp"
#include "support.hpp"

using namespace qar;

namespace {

FridgeParams fig2_params(double g = 0.2) {
  return FridgeParams(1.0, 2.0, 1.0, g, 50.0, 50.0, 100.0);
}

} // namespace

TEST(FridgeParams, RejectsBrokenResonance) {
  EXPECT_THROW(FridgeParams(1.0, 2.1, 1.0, 0.1, 50, 50, 100),
               std::invalid_argument);
  EXPECT_NO_THROW(FridgeParams(0.7, 1.6, 0.9, 0.1, 50, 50, 100));
}

TEST(FridgeParams, RejectsNonPositiveInputs) {
  EXPECT_THROW(FridgeParams(0.0, 1.0, 1.0, 0.1, 50, 50, 100),
               std::invalid_argument);
  EXPECT_THROW(FridgeParams(1.0, 2.0, 1.0, -0.1, 50, 50, 100),
               std::invalid_argument);
  EXPECT_THROW(FridgeParams(1.0, 2.0, 1.0, 0.1, 50, 50, -1),
               std::invalid_argument);
  EXPECT_THROW(FridgeParams(1.0, 2.0, 1.0, 0.1, 60, 50, 100),
               std::invalid_argument);  // t_cold > t_room
  EXPECT_THROW(FridgeParams(1.0, 2.0, 1.0, 0.1, 50, 100, 90),
               std::invalid_argument);  // t_room > t_hot
}

TEST(FridgeParams, InteractionCommutesWithLocalHamiltonian) {
  for (auto params : {fig2_params(), FridgeParams(0.7, 1.6, 0.9, 0.13, 12.5,
                                                  14.0, 80.0)}) {
    const Matrix h = local_hamiltonian(params);
    const Matrix v = interaction_hamiltonian(params);
    EXPECT_LT((h * v - v * h).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Basis, TransportSubspaceIndices) {
  // |q1 q2 q3> with qubit 1 most significant.
  EXPECT_EQ(basis::kKet010, 2);
  EXPECT_EQ(basis::kKet101, 5);
}

TEST(BathSpec, Validation) {
  EXPECT_THROW(BathSpec::model_i_strong(0.0, 1e3), std::invalid_argument);
  EXPECT_THROW(BathSpec::model_i_weak(1e-3, -1.0), std::invalid_argument);
  EXPECT_THROW(BathSpec::model_ii(-1.0, 0.05), std::invalid_argument);
  EXPECT_THROW(BathSpec::model_ii(10.0, 1.5), std::invalid_argument);
  EXPECT_NO_THROW(BathSpec::stochastic(1e-3, 1e3));
  const auto defaults = BathSpec::model_ii_default(fig2_params());
  EXPECT_DOUBLE_EQ(defaults.gamma, 40.0);
  EXPECT_DOUBLE_EQ(defaults.eta, 0.05);
}

TEST(ThermalProductState, ZeroTemperatureLimitIsGroundState) {
  const FridgeParams params(1.0, 2.0, 1.0, 0.1, 1e-4, 1e-4, 2e-4);
  const Matrix rho = thermal_product_state(params).entries();
  EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-10);
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(qubit_sigma_z(rho, i), -1.0, 1e-10);
}

TEST(ThermalProductState, MarginalMatchesTanh) {
  const Matrix rho = thermal_product_state(fig2_params()).entries();
  EXPECT_NEAR(qubit_sigma_z(rho, 0), -std::tanh(0.01), 1e-14);
  EXPECT_NEAR(qubit_sigma_z(rho, 0), -0.00999966667999946, 1e-12);
  EXPECT_NEAR(qubit_sigma_z(rho, 1), -std::tanh(0.02), 1e-14);
  EXPECT_NEAR(qubit_sigma_z(rho, 2), -std::tanh(0.005), 1e-14);
}

TEST(ThermalProductState, PopulationBiasFavours101) {
  // Hand product of Boltzmann factors at E=(1,2,1), T=(50,50,100).
  const Matrix rho = thermal_product_state(fig2_params()).entries();
  const double p010 = rho(basis::kKet010, basis::kKet010).real();
  const double p101 = rho(basis::kKet101, basis::kKet101).real();
  EXPECT_NEAR(p010, 0.12434391710473341, 1e-14);
  EXPECT_NEAR(p101, 0.12559359424753597, 1e-14);
  EXPECT_GT(p101, p010);
}

TEST(ThermalProductState, DiagonalInComputationalBasis) {
  const Matrix rho = thermal_product_state(fig2_params()).entries();
  const Matrix offdiag = rho - Matrix(rho.diagonal().asDiagonal());
  EXPECT_LT(offdiag.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ThermalProductState, RoundTripsThroughEffectiveTemperature) {
  auto rng = test::make_rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto params = test::random_params(rng, test::CouplingRegime::Strong);
    const Matrix rho = thermal_product_state(params).entries();
    for (int i = 0; i < 3; ++i) {
      const double recovered =
          effective_temperature(qubit_sigma_z(rho, i), params.energy(i));
      EXPECT_NEAR(recovered / params.temperature(i), 1.0, 1e-10);
    }
  }
}

TEST(VirtualTemperature, Fig2CaptionValue) {
  EXPECT_NEAR(virtual_temperature(fig2_params()), 100.0 / 3.0, 1e-12);
}

TEST(VirtualTemperature, EqualBathTemperaturesReturnThatTemperature) {
  const FridgeParams params(1.0, 2.0, 1.0, 0.1, 37.25, 37.25, 37.25);
  EXPECT_NEAR(virtual_temperature(params), 37.25, 1e-10);
}

TEST(VirtualTemperature, HotBathLimit) {
  const FridgeParams params(1.0, 2.0, 1.0, 0.1, 50, 50, 1e12);
  EXPECT_NEAR(virtual_temperature(params), 25.0, 1e-6);
}

TEST(EffectiveTemperature, RoundTripAndSentinels) {
  EXPECT_NEAR(effective_temperature(-std::tanh(0.01), 1.0), 50.0, 1e-10);
  EXPECT_EQ(effective_temperature(-1.0, 1.0), 0.0);
  EXPECT_TRUE(std::isinf(effective_temperature(0.0, 1.0)));
  EXPECT_GT(effective_temperature(0.0, 1.0), 1e300);
  EXPECT_EQ(effective_temperature(-(1.0 - 1e-16), 1.0), 0.0);
  EXPECT_LT(effective_temperature(0.5, 1.0), 0.0);  // inverted, sign kept
  EXPECT_THROW(effective_temperature(1.0 + 1e-6, 1.0), std::domain_error);
}

TEST(CoherenceBound, LimitsAndFig2Value) {
  const FridgeParams hot(1.0, 2.0, 1.0, 0.1, 1e9, 1e9, 2e9);
  EXPECT_NEAR(coherence_bound(hot), 0.125, 1e-9);
  EXPECT_NEAR(coherence_bound(fig2_params()), 0.12496719358296057, 1e-14);
  const FridgeParams cold(1.0, 2.0, 1.0, 0.1, 1e-3, 1e-3, 2e-3);
  EXPECT_LT(coherence_bound(cold), 1e-100);
}

TEST(InjectCoherence, ZeroMagnitudeIsIdentity) {
  const DensityMatrix rho = thermal_product_state(fig2_params());
  const DensityMatrix out = inject_coherence(rho, 0.0, 1.3);
  EXPECT_LT((out.entries() - rho.entries()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(InjectCoherence, SetsRequestedCoherence) {
  const FridgeParams params = fig2_params();
  const double r = coherence_bound(params) / 100.0;
  const DensityMatrix out =
      inject_coherence(thermal_product_state(params), r, 0.0);
  const Complex c = transport_coherence(out.entries());
  EXPECT_NEAR(c.real(), 0.0, 1e-16);
  EXPECT_NEAR(c.imag(), r, 1e-16);
}

TEST(InjectCoherence, DiagonalEntriesUntouched) {
  auto rng = test::make_rng(77);
  const FridgeParams params = fig2_params();
  const DensityMatrix rho = thermal_product_state(params);
  for (int trial = 0; trial < 10; ++trial) {
    const double r = test::uniform(rng, 0.0, 0.95) * coherence_bound(params);
    const double phi = test::uniform(rng, 0.0, 6.28);
    const DensityMatrix out = inject_coherence(rho, r, phi);
    for (int i = 0; i < 8; ++i)
      EXPECT_EQ(out.entries()(i, i), rho.entries()(i, i));
  }
}

TEST(InjectCoherence, NearMaximalCoherenceStaysPositive) {
  const FridgeParams params = fig2_params();
  const double r = 0.99 * coherence_bound(params);
  const DensityMatrix out =
      inject_coherence(thermal_product_state(params), r, 2.1);
  EXPECT_GE(out.min_eigenvalue(), -1e-9);
}

TEST(InjectCoherence, RejectsOverfilledCoherence) {
  const FridgeParams params = fig2_params();
  EXPECT_THROW(inject_coherence(thermal_product_state(params),
                                1.01 * coherence_bound(params), 0.0),
               PositivityError);
}

TEST(InjectCoherence, RejectsNonDiagonalInput) {
  const FridgeParams params = fig2_params();
  const DensityMatrix seeded = inject_coherence(
      thermal_product_state(params), coherence_bound(params) / 10, 0.0);
  EXPECT_THROW(inject_coherence(seeded, 0.01, 0.0), std::invalid_argument);
}

TEST(DensityMatrix, RejectsInvariantViolations) {
  Matrix bad_trace = Matrix::Identity(8, 8);
  EXPECT_THROW(DensityMatrix{bad_trace}, InvariantError);

  Matrix non_hermitian = Matrix::Zero(2, 2);
  non_hermitian(0, 0) = 0.5;
  non_hermitian(1, 1) = 0.5;
  non_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{non_hermitian}, InvariantError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  EXPECT_THROW(DensityMatrix{negative}, PositivityError);
}

TEST(PartialTrace, FictitiousQubitsTraceOut) {
  const FridgeParams params = fig2_params();
  const Matrix physical = thermal_product_state(params).entries();
  Matrix fictitious = Matrix::Zero(8, 8);
  fictitious(3, 3) = 0.25;
  fictitious(6, 6) = 0.75;
  const Matrix joint = kron(physical, fictitious);
  EXPECT_LT((trace_out_fictitious(joint) - physical).cwiseAbs().maxCoeff(),
            1e-14);
}
