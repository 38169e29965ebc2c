#pragma once

// Reference computations used only by the tests. None of these go through the
// library's integrators or its Pade exponential.

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline const cplx I{0.0, 1.0};

inline CMatrix sx() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
inline CMatrix sy() {
  CMatrix m(2, 2);
  m << 0.0, -I, I, 0.0;
  return m;
}
inline CMatrix sz() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

// exp(-i theta sigma) = cos(theta) I - i sin(theta) sigma for any Pauli sigma.
inline CMatrix pauli_rotation(const CMatrix& sigma, double theta) {
  return std::cos(theta) * CMatrix::Identity(2, 2) - I * std::sin(theta) * sigma;
}

// exp(-i h t) for Hermitian h via its eigendecomposition.
inline CMatrix hermitian_exp(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const CVector phases = (-I * t * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(a) for diagonalizable a via a general eigendecomposition.
inline CMatrix eigen_exp(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> es(a);
  const CVector e = es.eigenvalues().array().exp();
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().inverse();
}

// Truncated Taylor series with many terms; fine for small-norm arguments.
inline CMatrix taylor_exp(const CMatrix& a, int terms = 60) {
  CMatrix sum = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// Node-admittance matrix stamped from netlist text alone: lines
// "<C|L|R><k> <n+> <n-> <value>", node 0 is ground, comments and ".end" skipped.
inline CMatrix stamp_netlist(const std::string& text, int ports, cplx s) {
  CMatrix y = CMatrix::Zero(ports, ports);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*' || line[0] == '.') continue;
    std::istringstream f(line);
    std::string name;
    int a = 0, b = 0;
    double v = 0.0;
    f >> name >> a >> b >> v;
    const cplx ye = name[0] == 'C' ? s * v : name[0] == 'L' ? 1.0 / (s * v) : cplx(1.0 / v);
    if (a > 0) y(a - 1, a - 1) += ye;
    if (b > 0) y(b - 1, b - 1) += ye;
    if (a > 0 && b > 0) {
      y(a - 1, b - 1) -= ye;
      y(b - 1, a - 1) -= ye;
    }
  }
  return y;
}

template <typename D>
double max_abs(const Eigen::MatrixBase<D>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace oracle
