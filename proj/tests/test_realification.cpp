#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qgauge/errors.hpp"
#include "qgauge/random.hpp"
#include "qgauge/realification.hpp"

using namespace qgauge;

namespace {

double rdev(const RMatrix& a, const RMatrix& b) { return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff(); }
double vdev(const RVector& a, const RVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

RMatrix j2() {
  RMatrix m(2, 2);
  m << 0.0, -1.0, 1.0, 0.0;
  return m;
}

// Centered second-difference residual of phi'' + A phi' + B phi along a path.
double fd_residual(const std::vector<RVector>& phi, double h, const RMatrix& a, const RMatrix& b) {
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < phi.size(); ++j) {
    const RVector acc = (phi[j + 1] - 2.0 * phi[j] + phi[j - 1]) / (h * h);
    const RVector vel = (phi[j + 1] - phi[j - 1]) / (2.0 * h);
    worst = std::max(worst, (acc + a * vel + b * phi[j]).cwiseAbs().maxCoeff());
  }
  return worst;
}

RVector random_vector(MatrixSampler& rng, int n) {
  RVector v(n);
  for (int k = 0; k < n; ++k) v(k) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("decomplexify examples") {
  const double r = 1.0 / std::sqrt(2.0);
  const RealState s = decomplexify({CVector(Eigen::Vector2cd(r, cplx(0.0, r))), 0.25});
  CHECK(s.phi1 == RVector(Eigen::Vector2d(r, 0.0)));
  CHECK(s.phi2 == RVector(Eigen::Vector2d(0.0, r)));
  CHECK(s.time == 0.25);
  CHECK(decomplexify({CVector(Eigen::Vector3cd(1.0, -2.0, 0.5)), 0.0}).phi2.isZero(0.0));

  MatrixSampler rng(4);
  for (int n = 1; n <= 8; ++n) {
    const StateVector psi{rng.unit_state(n), 1.5};
    const StateVector back = recomplexify(decomplexify(psi));
    CHECK(back.entries == psi.entries);
    CHECK(back.time == psi.time);
  }
}

TEST_CASE("build_real_system examples") {
  SUBCASE("sigma_x") {
    const RealSystem sys = build_real_system(oracle::sx(), true);
    CHECK(sys.dim == 2);
    CHECK(rdev(sys.h1, oracle::sx().real()) == 0.0);
    CHECK(sys.h2.isZero(0.0));
    REQUIRE(sys.decoupled_valid);
    CHECK(sys.aq->isZero(0.0));
    CHECK(rdev(*sys.bq, RMatrix::Identity(2, 2)) == 0.0);
  }
  SUBCASE("sigma_y") {
    const RealSystem sys = build_real_system(oracle::sy(), true);
    CHECK_FALSE(sys.decoupled_valid);
    CHECK_FALSE(sys.aq.has_value());
    CHECK_FALSE(sys.bq.has_value());
    CHECK_FALSE(sys.diagnostic.empty());
    RMatrix gen = RMatrix::Zero(4, 4);
    gen.topLeftCorner(2, 2) = j2();
    gen.bottomRightCorner(2, 2) = j2();
    CHECK(rdev(sys.coupled_generator, gen) == 0.0);
  }
  SUBCASE("sigma_x + sigma_y") {
    const RealSystem sys = build_real_system(CMatrix(oracle::sx() + oracle::sy()), true);
    REQUIRE(sys.decoupled_valid);
    CHECK(sys.aq->cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(rdev(*sys.bq, 2.0 * RMatrix::Identity(2, 2)) <= 1e-15);

    // phi1 from the coupled system must satisfy phi'' + 2 phi = 0.
    const TimeGrid grid(0.0, 4.0, 4000);
    const auto path = evolve_coupled(sys, {RVector(Eigen::Vector2d(1.0, 0.0)), RVector::Zero(2), 0.0}, grid);
    std::vector<RVector> phi1;
    for (const auto& s : path) phi1.push_back(s.phi1);
    CHECK(fd_residual(phi1, grid.step(), RMatrix::Zero(2, 2), 2.0 * RMatrix::Identity(2, 2)) <= 1e-5);
  }
  SUBCASE("not requested") {
    const RealSystem sys = build_real_system(oracle::sx(), false);
    CHECK_FALSE(sys.decoupled_valid);
    CHECK_FALSE(sys.bq.has_value());
  }
  SUBCASE("coupled generator blocks and exact split") {
    MatrixSampler rng(8);
    const CMatrix h = rng.complex_matrix(5);
    const RealSystem sys = build_real_system(h, true);
    CHECK((sys.h1.cast<cplx>() + oracle::I * sys.h2.cast<cplx>() - h).cwiseAbs().maxCoeff() == 0.0);
    CHECK(rdev(sys.coupled_generator.topLeftCorner(5, 5), sys.h2) == 0.0);
    CHECK(rdev(sys.coupled_generator.topRightCorner(5, 5), sys.h1) == 0.0);
    CHECK(rdev(sys.coupled_generator.bottomLeftCorner(5, 5), -sys.h1) == 0.0);
    CHECK(rdev(sys.coupled_generator.bottomRightCorner(5, 5), sys.h2) == 0.0);
  }
}

TEST_CASE("decoupled form only for constant specs") {
  const HamiltonianSpec driven(2, {{PolynomialProfile{{1.0, 1.0}}, oracle::sx()}}, true);
  const RealSystem sys = build_real_system(driven, 0.5, true);
  CHECK_FALSE(sys.decoupled_valid);
  CHECK(rdev(sys.h1, 1.5 * oracle::sx().real()) <= 1e-15);
  CHECK(build_real_system(HamiltonianSpec::constant(oracle::sx(), true), 3.0, true).decoupled_valid);
}

TEST_CASE("decoupling identity") {
  MatrixSampler rng(19);
  for (int n = 2; n <= 8; ++n) {
    const CMatrix h = rng.hermitian_with_invertible_real_part(n);
    const RealSystem sys = build_real_system(h, true);
    REQUIRE(sys.decoupled_valid);
    const RMatrix h1i = sys.h1.inverse();
    CHECK(rdev(sys.h2 + sys.h1 * sys.h2 * h1i, -*sys.aq) <= 1e-12);
    CHECK(rdev(sys.h1 * sys.h1 + sys.h1 * sys.h2 * h1i * sys.h2, *sys.bq) <= 1e-12);

    const RMatrix s = rng.real_symmetric(n);
    const RealSystem real = build_real_system(CMatrix(s.cast<cplx>()), true);
    REQUIRE(real.decoupled_valid);
    CHECK(real.aq->isZero(0.0));
    CHECK(*real.bq == s * s);
  }
}

TEST_CASE("evolve_coupled examples") {
  const TimeGrid grid(0.0, 2.0 * std::numbers::pi, 2000);
  const RealSystem sx = build_real_system(oracle::sx(), false);
  const StateVector psi0{CVector::Unit(2, 0), 0.0};
  const auto real = evolve_coupled(sx, decomplexify(psi0), grid);
  const auto complex = evolve_state(HamiltonianSpec::constant(oracle::sx(), true), psi0, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const RealState ref = decomplexify(complex[j]);
    worst = std::max({worst, vdev(real[j].phi1, ref.phi1), vdev(real[j].phi2, ref.phi2)});
    CHECK(real[j].time == grid.node(j));
  }
  CHECK(worst <= 1e-8);

  const RealState start{RVector(Eigen::Vector3d(0.3, -1.0, 2.0)), RVector(Eigen::Vector3d(1.0, 0.0, 0.5)), 0.0};
  for (const auto& s : evolve_coupled(build_real_system(CMatrix::Zero(3, 3), false), start, grid)) {
    CHECK(s.phi1 == start.phi1);
    CHECK(s.phi2 == start.phi2);
  }

  MatrixSampler rng(2);
  const RealSystem herm = build_real_system(rng.hermitian(5), false);
  const RealState s0 = decomplexify({rng.unit_state(5), 0.0});
  double drift = 0.0;
  for (const auto& s : evolve_coupled(herm, s0, grid)) {
    drift = std::max(drift, std::abs(s.phi1.squaredNorm() + s.phi2.squaredNorm() - 1.0));
  }
  CHECK(drift <= 1e-8);

  CHECK_THROWS_AS(evolve_coupled(herm, decomplexify(psi0), grid), DimensionError);
}

TEST_CASE("evolve_decoupled examples") {
  const TimeGrid grid(0.0, 2.0 * std::numbers::pi, 2000);
  const RealSystem sx = build_real_system(oracle::sx(), true);
  const auto path = evolve_decoupled(sx, Eigen::Vector2d(1.0, 0.0), RVector::Zero(2), grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    worst = std::max(worst, vdev(path[j].q, Eigen::Vector2d(std::cos(grid.node(j)), 0.0)));
  }
  CHECK(worst <= 1e-8);

  MatrixSampler rng(40);
  const RealSystem sys = build_real_system(rng.hermitian_with_invertible_real_part(3), true);
  REQUIRE(sys.decoupled_valid);
  const StateVector psi0{rng.unit_state(3), 0.0};
  const auto ic = initial_conditions_from_quantum(sys, psi0);
  const auto coupled = evolve_coupled(sys, decomplexify(psi0), grid);
  const auto d1 = evolve_decoupled(sys, ic.phi1, ic.phidot1, grid);
  double consistency = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) consistency = std::max(consistency, vdev(d1[j].q, coupled[j].phi1));
  CHECK(consistency <= 1e-7);

  // phi2 from the coupled system satisfies the same second-order equation.
  const TimeGrid fine(0.0, 2.0, 4000);
  std::vector<RVector> phi2;
  for (const auto& s : evolve_coupled(sys, decomplexify(psi0), fine)) phi2.push_back(s.phi2);
  CHECK(fd_residual(phi2, fine.step(), *sys.aq, *sys.bq) <= 1e-4 * sys.bq->cwiseAbs().maxCoeff());

  CHECK_THROWS_AS(evolve_decoupled(build_real_system(oracle::sy(), true), RVector::Zero(2), RVector::Zero(2), grid),
                  UnsupportedSystemError);
}

TEST_CASE("initial_conditions_from_quantum examples") {
  const RealSystem sx = build_real_system(oracle::sx(), true);
  const auto ic = initial_conditions_from_quantum(sx, {CVector::Unit(2, 0), 0.0});
  CHECK(ic.phidot1 == RVector::Zero(2));
  // psi(t) = (cos t, -i sin t).
  CHECK(ic.phidot2 == RVector(Eigen::Vector2d(0.0, -1.0)));

  MatrixSampler rng(6);
  const auto zero = initial_conditions_from_quantum(build_real_system(CMatrix::Zero(3, 3), true),
                                                    {rng.unit_state(3), 0.0});
  CHECK(zero.phidot1.isZero(0.0));
  CHECK(zero.phidot2.isZero(0.0));

  const CMatrix h = rng.hermitian_with_invertible_real_part(4);
  const RealSystem sys = build_real_system(h, true);
  const StateVector psi0{rng.unit_state(4), 0.0};
  const auto ic4 = initial_conditions_from_quantum(sys, psi0);
  const TimeGrid grid(0.0, 2.0, 2000);
  const auto complex = evolve_state(HamiltonianSpec::constant(h, true), psi0, grid);
  const auto p1 = evolve_decoupled(sys, ic4.phi1, ic4.phidot1, grid);
  const auto p2 = evolve_decoupled(sys, ic4.phi2, ic4.phidot2, grid);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const RealState ref = decomplexify(complex[j]);
    worst = std::max({worst, vdev(p1[j].q, ref.phi1), vdev(p2[j].q, ref.phi2)});
  }
  CHECK(worst <= 1e-7);

  CHECK_THROWS_AS(initial_conditions_from_quantum(sys, {CVector::Unit(2, 0), 0.0}), DimensionError);
}

TEST_CASE("three-path agreement") {
  MatrixSampler rng(1234);
  const TimeGrid grid(0.0, 2.0, 2000);
  for (int n = 2; n <= 8; ++n) {
    const CMatrix h = rng.hermitian_with_invertible_real_part(n);
    const RealSystem sys = build_real_system(h, true);
    REQUIRE(sys.decoupled_valid);
    const StateVector psi0{rng.unit_state(n), 0.0};
    const auto complex = evolve_state(HamiltonianSpec::constant(h, true), psi0, grid);
    const auto coupled = evolve_coupled(sys, decomplexify(psi0), grid);
    const auto ic = initial_conditions_from_quantum(sys, psi0);
    const auto d1 = evolve_decoupled(sys, ic.phi1, ic.phidot1, grid);
    const auto d2 = evolve_decoupled(sys, ic.phi2, ic.phidot2, grid);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const RealState ref = decomplexify(complex[j]);
      worst = std::max({worst, vdev(coupled[j].phi1, ref.phi1), vdev(coupled[j].phi2, ref.phi2),
                        vdev(d1[j].q, ref.phi1), vdev(d2[j].q, ref.phi2)});
    }
    CHECK(worst <= 1e-7);
  }
}

TEST_CASE("energy-like conservation for real symmetric H") {
  MatrixSampler rng(55);
  const TimeGrid grid(0.0, 5.0, 2000);
  for (int n : {2, 4, 6}) {
    const RealSystem sys = build_real_system(CMatrix(rng.real_symmetric(n).cast<cplx>()), true);
    const RMatrix& b = *sys.bq;
    const RVector q0 = random_vector(rng, n), qd0 = random_vector(rng, n);
    const auto path = evolve_decoupled(sys, q0, qd0, grid);
    const double e0 = qd0.squaredNorm() + q0.dot(b * q0);
    double drift = 0.0;
    for (const auto& p : path) drift = std::max(drift, std::abs(p.qdot.squaredNorm() + p.q.dot(b * p.q) - e0));
    CHECK(drift <= 1e-7);
  }
}
