#include "moyodft/lattice_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>

namespace moyodft {

namespace {

/// Exact binomial with early bail once the value exceeds `cap`.
long binomial_capped(int n, int k, long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long result = 1;
  for (int j = 1; j <= k; ++j) {
    result = result * (n - k + j) / j;  // exact: product of j consecutive ints divisible by j!
    if (result > cap) return cap + 1;
  }
  return result;
}

int parity_below(std::uint64_t mask, int orb) {
  std::uint64_t below = mask & ((1ull << orb) - 1ull);
  return (std::popcount(below) & 1) ? -1 : 1;
}

/// Matrix element of c_p^dagger c_q on a basis state, p != q.
/// Returns (sign, new mask) or nothing when the operator annihilates.
std::optional<std::pair<double, std::uint64_t>> hop_element(std::uint64_t mask, int p, int q) {
  if (!FockBasis::occupied(mask, q) || FockBasis::occupied(mask, p)) return std::nullopt;
  double sign = parity_below(mask, q);
  std::uint64_t removed = mask & ~(1ull << q);
  sign *= parity_below(removed, p);
  return std::make_pair(sign, removed | (1ull << p));
}

double spectral_scale(const Vector& eigenvalues) {
  return std::max({1.0, std::abs(eigenvalues[0]),
                   std::abs(eigenvalues[eigenvalues.size() - 1])});
}

/// All k-subsets of nbits positions, ascending in the integer encoding
/// (Gosper's hack). Assumes the count fits in `cap`; stops there otherwise.
std::vector<std::uint64_t> enumerate_subsets(int nbits, int k, long cap) {
  std::vector<std::uint64_t> out;
  if (k == 0) {
    out.push_back(0);
    return out;
  }
  std::uint64_t c = (1ull << k) - 1ull;
  const std::uint64_t limit = (nbits >= 64) ? ~0ull : (1ull << nbits);
  while (c < limit) {
    out.push_back(c);
    if (static_cast<long>(out.size()) > cap) break;
    std::uint64_t lo = c & (~c + 1ull);
    std::uint64_t lz = c + lo;
    c = lz | (((c ^ lz) >> 2) / lo);
    if (lo == 0) break;
  }
  return out;
}

}  // namespace

double soft_coulomb(double interaction_strength, int i, int j) {
  return interaction_strength / static_cast<double>(std::abs(i - j) + 1);
}

double LatticeSpec::kernel(int i, int j) const {
  if (interaction_kernel) return interaction_kernel(i, j);
  return soft_coulomb(interaction_strength, i, j);
}

void LatticeSpec::validate() const {
  if (sites < 1) throw DimensionMismatch("LatticeSpec: need at least one site");
  if (electrons < 1 || electrons > 2 * sites)
    throw DimensionMismatch("LatticeSpec: electron count violates the Pauli bound 1 <= N <= 2L");
  if (!(hopping > 0.0)) throw DimensionMismatch("LatticeSpec: hopping must be positive");
  if (interaction_strength < 0.0)
    throw DimensionMismatch("LatticeSpec: interaction strength must be nonnegative");
  if (lambda < 0.0 || lambda > 1.0)
    throw DimensionMismatch("LatticeSpec: lambda must lie in [0, 1]");
  if (!(degeneracy_tol > 0.0))
    throw DimensionMismatch("LatticeSpec: degeneracy tolerance must be positive");
}

bool LatticeSpec::interacting() const {
  if (lambda == 0.0) return false;
  return interaction_kernel != nullptr || interaction_strength != 0.0;
}

FockBasis::FockBasis(int sites, int electrons, int max_dim)
    : sites_(sites), electrons_(electrons) {
  if (sites < 1 || electrons < 1 || electrons > 2 * sites)
    throw DimensionMismatch("FockBasis: invalid site or electron count");
  if (2 * sites > 62) throw BasisTooLarge("FockBasis: more than 62 spin orbitals");
  long dim = binomial_capped(2 * sites, electrons, max_dim);
  if (dim > max_dim) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "FockBasis: dimension C(%d, %d) exceeds the cap %d",
                  2 * sites, electrons, max_dim);
    throw BasisTooLarge(buf);
  }
  states_ = enumerate_subsets(2 * sites, electrons, dim);
}

int FockBasis::index_of(std::uint64_t mask) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), mask);
  if (it == states_.end() || *it != mask) return -1;
  return static_cast<int>(it - states_.begin());
}

ManyBodySolver::ManyBodySolver(LatticeSpec spec)
    : spec_(std::move(spec)),
      basis_(spec_.sites, spec_.electrons, spec_.max_basis_dim) {
  spec_.validate();
  const int L = spec_.sites;
  const int D = basis_.dimension();
  const double t = spec_.hopping;

  h0_ = Matrix::Zero(D, D);
  site_occupation_ = Matrix::Zero(D, L);

  for (int a = 0; a < D; ++a) {
    const std::uint64_t s = basis_.state(a);

    for (int i = 0; i < L; ++i) {
      int n = static_cast<int>(FockBasis::occupied(s, FockBasis::orbital(i, 0))) +
              static_cast<int>(FockBasis::occupied(s, FockBasis::orbital(i, 1)));
      site_occupation_(a, i) = static_cast<double>(n);
    }

    // Two-body term: every distinct occupied spin-orbital pair, weighted by
    // the site kernel and lambda.
    if (spec_.interacting()) {
      double w = 0.0;
      for (int p = 0; p < 2 * L; ++p) {
        if (!FockBasis::occupied(s, p)) continue;
        for (int q = p + 1; q < 2 * L; ++q) {
          if (!FockBasis::occupied(s, q)) continue;
          w += spec_.kernel(p / 2, q / 2);
        }
      }
      h0_(a, a) += spec_.lambda * w;
    }

    // Hopping between adjacent sites at equal spin, both directions.
    for (int i = 0; i + 1 < L; ++i) {
      for (int sigma = 0; sigma < 2; ++sigma) {
        const int p = FockBasis::orbital(i, sigma);
        const int q = FockBasis::orbital(i + 1, sigma);
        for (auto [from, to] : {std::pair{q, p}, std::pair{p, q}}) {
          if (auto el = hop_element(s, to, from)) {
            int b = basis_.index_of(el->second);
            h0_(b, a) += -t * el->first;
          }
        }
      }
    }
  }
}

Matrix ManyBodySolver::hamiltonian(const Vector& v) const {
  if (v.size() != spec_.sites)
    throw DimensionMismatch("ManyBodySolver: potential length does not match the lattice");
  Matrix h = h0_;
  h.diagonal() += site_occupation_ * v;
  return h;
}

GroundStateResult ManyBodySolver::solve(const Vector& v) const {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian(v));
  if (eig.info() != Eigen::Success)
    throw EigensolverFailure("ManyBodySolver: dense eigensolver failed");

  const Vector& ev = eig.eigenvalues();
  const double scale = spectral_scale(ev);
  const double e0 = ev[0];

  GroundStateResult result;
  result.energy = e0;
  int deg = 1;
  while (deg < ev.size() && ev[deg] - e0 <= spec_.degeneracy_tol * scale) ++deg;
  result.degeneracy = deg;

  result.ensemble_density = Vector::Zero(spec_.sites);
  for (int k = 0; k < deg; ++k) {
    Vector weights = eig.eigenvectors().col(k).array().square();
    Vector rho = site_occupation_.transpose() * weights;
    result.ensemble_density += rho;
    result.ground_densities.push_back(std::move(rho));
  }
  result.ensemble_density /= static_cast<double>(deg);
  return result;
}

Matrix build_hamiltonian(const LatticeSpec& spec, const Vector& v) {
  return ManyBodySolver(spec).hamiltonian(v);
}

GroundStateResult ground_state(const LatticeSpec& spec, const Vector& v) {
  return ManyBodySolver(spec).solve(v);
}

double energy(const LatticeSpec& spec, const Vector& v) {
  return ground_state(spec, v).energy;
}

GroundStateResult noninteracting_solve(const LatticeSpec& spec, const Vector& v) {
  spec.validate();
  const int L = spec.sites;
  const int N = spec.electrons;
  if (v.size() != L)
    throw DimensionMismatch("noninteracting_solve: potential length does not match the lattice");

  Matrix h = Matrix::Zero(L, L);
  for (int i = 0; i < L; ++i) h(i, i) = v[i];
  for (int i = 0; i + 1 < L; ++i) {
    h(i, i + 1) = -spec.hopping;
    h(i + 1, i) = -spec.hopping;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  if (eig.info() != Eigen::Success)
    throw EigensolverFailure("noninteracting_solve: dense eigensolver failed");

  const Vector& e = eig.eigenvalues();
  const double scale = spectral_scale(e);
  const double tol = spec.degeneracy_tol * scale;

  // Fermi level: energy of the N-th spin orbital (two per spatial orbital).
  const double e_fermi = e[(N - 1) / 2];

  std::vector<int> full, shell;
  for (int k = 0; k < L; ++k) {
    if (e[k] < e_fermi - tol) full.push_back(k);
    else if (e[k] <= e_fermi + tol) shell.push_back(k);
  }
  const int m = N - 2 * static_cast<int>(full.size());  // electrons in the shell
  const int s = static_cast<int>(shell.size());

  Vector base = Vector::Zero(L);
  double base_energy = 0.0;
  for (int k : full) {
    base += 2.0 * eig.eigenvectors().col(k).array().square().matrix();
    base_energy += 2.0 * e[k];
  }

  GroundStateResult result;
  result.ensemble_density = base;
  result.energy = base_energy;
  double shell_energy = 0.0;
  for (int k : shell) {
    result.ensemble_density +=
        (static_cast<double>(m) / s) * eig.eigenvectors().col(k).array().square().matrix();
    shell_energy += e[k];
  }
  result.energy += (static_cast<double>(m) / s) * shell_energy;

  // Pure fillings: choose m of the 2s shell spin orbitals. Spin slot 2j+sigma
  // maps to shell orbital j; both spins share the spatial weight.
  long count = binomial_capped(2 * s, m, spec.max_basis_dim);
  if (count <= spec.max_basis_dim) {
    for (std::uint64_t choice : enumerate_subsets(2 * s, m, count)) {
      Vector rho = base;
      for (int slot = 0; slot < 2 * s; ++slot) {
        if ((choice >> slot) & 1ull)
          rho += eig.eigenvectors().col(shell[slot / 2]).array().square().matrix();
      }
      result.ground_densities.push_back(std::move(rho));
    }
    result.degeneracy = static_cast<int>(result.ground_densities.size());
  } else {
    // Too many fillings to enumerate; expose the ensemble only.
    result.ground_densities.push_back(result.ensemble_density);
    result.degeneracy = static_cast<int>(count);
  }
  return result;
}

std::vector<Vector> superdiff_E(const LatticeSpec& spec, const Vector& v) {
  GroundStateResult gs = ground_state(spec, v);
  std::vector<Vector> out = gs.ground_densities;
  out.push_back(gs.ensemble_density);
  return out;
}

}  // namespace moyodft
