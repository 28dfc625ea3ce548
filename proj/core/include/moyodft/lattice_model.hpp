#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "moyodft/common.hpp"

namespace moyodft {

/// Soft Coulomb pair energy U / (|i - j| + 1) between sites i and j.
double soft_coulomb(double interaction_strength, int i, int j);

/// Physical model: N spin-1/2 fermions on an L-site open chain.
/// The interaction kernel defaults to soft Coulomb built from
/// interaction_strength; a custom kernel must be symmetric. lambda scales the
/// two-body term only (adiabatic connection parameter).
struct LatticeSpec {
  int sites = 2;
  int electrons = 1;
  double hopping = 0.5;
  double interaction_strength = 0.0;
  std::function<double(int, int)> interaction_kernel;  // empty = soft Coulomb
  double lambda = 1.0;
  double degeneracy_tol = 1e-10;  // relative gap below which levels count as degenerate
  int max_basis_dim = 4096;

  /// Kernel value with the soft-Coulomb default applied.
  double kernel(int i, int j) const;

  /// Throws DimensionMismatch on invalid particle counts or lambda range.
  void validate() const;

  /// True when the two-body term can contribute (lambda and kernel nonzero).
  bool interacting() const;
};

/// Occupation-number basis: bitstrings over 2L spin orbitals with exactly N
/// set bits, orbital index p = 2 * site + spin (site-major). Enumeration is
/// ascending in the integer encoding, which is total and reproducible.
class FockBasis {
 public:
  FockBasis(int sites, int electrons, int max_dim = 4096);

  int dimension() const { return static_cast<int>(states_.size()); }
  std::uint64_t state(int index) const { return states_[static_cast<std::size_t>(index)]; }
  /// Index of a bitstring, or -1 if it is not an N-particle state.
  int index_of(std::uint64_t mask) const;

  int sites() const { return sites_; }
  int electrons() const { return electrons_; }

  static int orbital(int site, int spin) { return 2 * site + spin; }
  static bool occupied(std::uint64_t mask, int orb) { return (mask >> orb) & 1ull; }

 private:
  int sites_;
  int electrons_;
  std::vector<std::uint64_t> states_;
};

/// Ground level of one diagonalization. Densities are site occupations
/// rho_i = sum_sigma <n_{i sigma}>, one per orthonormal ground eigenvector;
/// ensemble_density is their equal-weight average.
struct GroundStateResult {
  double energy = 0.0;
  int degeneracy = 1;
  std::vector<Vector> ground_densities;
  Vector ensemble_density;
};

/// Many-body Hamiltonian H = T + lambda W + V in the FockBasis ordering.
/// T hops between adjacent sites at equal spin with the Jordan-Wigner sign;
/// V is diagonal; W couples all distinct occupied spin-orbital pairs through
/// the site kernel. Throws DimensionMismatch or BasisTooLarge.
Matrix build_hamiltonian(const LatticeSpec& spec, const Vector& v);

/// Full diagonalization; returns the lowest level with every eigenvector
/// within degeneracy_tol * spectral_scale of it.
GroundStateResult ground_state(const LatticeSpec& spec, const Vector& v);

/// Ground-state energy E[v] only.
double energy(const LatticeSpec& spec, const Vector& v);

/// One-particle solve at lambda = 0: diagonalizes the L x L hopping matrix
/// plus diag(v) and fills the N lowest spin orbitals (two per spatial
/// orbital). On a partially filled degenerate Fermi shell the ensemble
/// density averages the shell occupation and ground_densities lists each
/// pure filling (capped at max_basis_dim fillings, ensemble-only beyond).
/// Interaction fields of the model are ignored.
GroundStateResult noninteracting_solve(const LatticeSpec& spec, const Vector& v);

/// Superdifferential sample of the concave map v -> E[v]: every ground
/// density plus the ensemble density.
std::vector<Vector> superdiff_E(const LatticeSpec& spec, const Vector& v);

/// Caches the v-independent part of the Hamiltonian for repeated solves at
/// varying potentials (the dual-ascent inner loop). Immutable after
/// construction; solve() is const and safe to call concurrently.
class ManyBodySolver {
 public:
  explicit ManyBodySolver(LatticeSpec spec);

  const LatticeSpec& spec() const { return spec_; }
  const FockBasis& basis() const { return basis_; }

  /// Assembled H = T + lambda W + diag potential in the basis ordering.
  Matrix hamiltonian(const Vector& v) const;

  GroundStateResult solve(const Vector& v) const;

 private:
  LatticeSpec spec_;
  FockBasis basis_;
  Matrix h0_;                // hopping + lambda * interaction
  Matrix site_occupation_;   // (dimension, sites): n_i per basis state
};

}  // namespace moyodft
