#pragma once

// Shared helpers for the test suites: hand-built qubit constants, random
// model generators, and brute-force oracles that stay independent of the
// library's computation paths (matrix exponentials go through Eigen's
// Pade-based exp here, not the library's eigendecomposition route).

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "dechist/decoherence.hpp"
#include "dechist/histories.hpp"

namespace testsupport {

using dechist::Complex;
using dechist::Matrix;
using dechist::Vector;

inline const Complex kI{0.0, 1.0};
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

// ---- hand-built qubit constants ----

inline Matrix qubit_p0() {
  Matrix m(2, 2);
  m << 1, 0, 0, 0;
  return m;
}

inline Matrix qubit_p1() {
  Matrix m(2, 2);
  m << 0, 0, 0, 1;
  return m;
}

inline Matrix qubit_pplus() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

inline Matrix qubit_pminus() {
  Matrix m(2, 2);
  m << 0.5, -0.5, -0.5, 0.5;
  return m;
}

inline Vector ket0() {
  Vector v(2);
  v << 1, 0;
  return v;
}

inline Vector ket1() {
  Vector v(2);
  v << 0, 1;
  return v;
}

inline Vector ket_plus() {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return v;
}

inline dechist::ProjectionFamily z_family() {
  return dechist::ProjectionFamily(
      {dechist::Projector(qubit_p0(), "z0"), dechist::Projector(qubit_p1(), "z1")});
}

inline dechist::ProjectionFamily x_family() {
  return dechist::ProjectionFamily(
      {dechist::Projector(qubit_pplus(), "x+"), dechist::Projector(qubit_pminus(), "x-")});
}

/// The canonical interference grid: qubit in |0>, H = 0, x alternatives at
/// t=1 then z alternatives at t=2.
inline dechist::HistoryGrid xz_grid() {
  return dechist::HistoryGrid({1.0, 2.0}, {x_family(), z_family()},
                              dechist::Hamiltonian::zero(2),
                              dechist::DensityState::pure(ket0()));
}

// ---- random generators (all seeded by the caller for reproducibility) ----

inline Matrix random_complex(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
  }
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int dim) {
  const Matrix a = random_complex(rng, dim, dim);
  return (a + a.adjoint()) / 2.0;
}

/// Full-rank density matrix: Gram matrix plus a ridge, normalized.
inline Matrix random_density(std::mt19937_64& rng, int dim) {
  const Matrix a = random_complex(rng, dim, dim);
  Matrix rho = a * a.adjoint() + 0.2 * Matrix::Identity(dim, dim);
  rho /= rho.trace().real();
  return (rho + Matrix(rho.adjoint())) / 2.0;
}

inline Matrix random_unitary(std::mt19937_64& rng, int dim) {
  const Matrix a = random_complex(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  return q;
}

/// Random exhaustive family: a Haar-ish basis grouped into 1..dim cells.
inline dechist::ProjectionFamily random_family(std::mt19937_64& rng, int dim) {
  const Matrix basis = random_unitary(rng, dim);
  std::uniform_int_distribution<int> group_count(1, dim);
  const int cells = group_count(rng);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(cells));
  for (int col = 0; col < dim; ++col) {
    if (col < cells) {
      groups[static_cast<std::size_t>(col)].push_back(col);  // every cell nonempty
    } else {
      std::uniform_int_distribution<int> pick(0, cells - 1);
      groups[static_cast<std::size_t>(pick(rng))].push_back(col);
    }
  }
  return dechist::ProjectionFamily::from_basis_groups(basis, groups);
}

/// Random grid: dim in [2, max_dim], 1..max_slots times, random Hermitian
/// dynamics and full-rank state.
inline dechist::HistoryGrid random_grid(std::mt19937_64& rng, int max_dim = 6, int max_slots = 3) {
  std::uniform_int_distribution<int> dim_dist(2, max_dim);
  std::uniform_int_distribution<int> slot_dist(1, max_slots);
  std::uniform_real_distribution<double> gap(0.2, 1.2);
  const int dim = dim_dist(rng);
  const int slots = slot_dist(rng);
  std::vector<double> times;
  double t = 0.0;
  for (int j = 0; j < slots; ++j) {
    t += gap(rng);
    times.push_back(t);
  }
  std::vector<dechist::ProjectionFamily> families;
  for (int j = 0; j < slots; ++j) families.push_back(random_family(rng, dim));
  return dechist::HistoryGrid(times, families, dechist::Hamiltonian(random_hermitian(rng, dim)),
                              dechist::DensityState(random_density(rng, dim)));
}

/// Random total map onto 1..4 bar labels (empty cells simply never appear).
inline dechist::CoarseGrainingMap random_map(std::mt19937_64& rng, const dechist::HistoryGrid& g) {
  std::uniform_int_distribution<int> label_count(1, 4);
  const int cells = label_count(rng);
  std::uniform_int_distribution<int> pick(0, cells - 1);
  return dechist::CoarseGrainingMap::from_function(g, [&](const dechist::HistoryIndex&) {
    return "c" + std::to_string(pick(rng));
  });
}

// ---- independent oracles ----

/// exp(-i H t) via Eigen's Pade-based matrix exponential; a different
/// algorithm from the library's eigendecomposition route.
inline Matrix oracle_evolution(const Matrix& h, double t) {
  const Matrix generator = -kI * t * h;
  return generator.exp();
}

/// Brute-force decoherence functional: rebuilds every Heisenberg projector,
/// class operator, and trace with its own arithmetic. Entry (a, b) is
/// Tr(C_a rho C_b^dag) computed elementwise.
inline Matrix oracle_decoherence(const std::vector<double>& times,
                                 const std::vector<std::vector<Matrix>>& families, const Matrix& h,
                                 const Matrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  std::vector<std::vector<Matrix>> heis(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    const Matrix u = oracle_evolution(h, times[j]);
    for (const Matrix& p : families[j]) heis[j].push_back(u.adjoint() * p * u);
  }
  // enumerate index tuples lexicographically
  std::vector<std::vector<int>> tuples;
  std::vector<int> current(times.size(), 0);
  while (true) {
    tuples.push_back(current);
    std::size_t j = times.size();
    bool done = false;
    while (j > 0) {
      --j;
      if (++current[j] < static_cast<int>(families[j].size())) break;
      current[j] = 0;
      if (j == 0) done = true;
    }
    if (done) break;
  }
  std::vector<Matrix> ops;
  for (const auto& tuple : tuples) {
    Matrix c = Matrix::Identity(dim, dim);
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      c = heis[j][static_cast<std::size_t>(tuple[j])] * c;  // later times multiply from the left
    }
    ops.push_back(c);
  }
  Matrix d(ops.size(), ops.size());
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = 0; b < ops.size(); ++b) {
      Complex trace(0.0, 0.0);
      const Matrix m = ops[a] * rho * ops[b].adjoint();
      for (int i = 0; i < dim; ++i) trace += m(i, i);
      d(a, b) = trace;
    }
  }
  return d;
}

inline std::vector<Matrix> family_matrices(const dechist::ProjectionFamily& f) {
  std::vector<Matrix> out;
  for (const auto& p : f.members()) out.push_back(p.matrix());
  return out;
}

inline Matrix oracle_decoherence(const dechist::HistoryGrid& g) {
  std::vector<std::vector<Matrix>> families;
  for (std::size_t j = 0; j < g.slot_count(); ++j) {
    families.push_back(family_matrices(g.family(j)));
  }
  return oracle_decoherence(g.times(), families, g.hamiltonian().matrix(), g.state().matrix());
}

}  // namespace testsupport
