#include "qseed/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "qseed/errors.hpp"

namespace qseed::encoding {

DiscretizationGrid::DiscretizationGrid(double x_min, double x_max,
                                       int k_qubits)
    : x_min_(x_min), x_max_(x_max), k_(k_qubits) {
  if (!(x_min < x_max))
    throw std::invalid_argument("grid requires x_min < x_max");
  if (k_qubits < 1 || k_qubits > 62)
    throw std::invalid_argument("grid requires 1 <= k_qubits <= 62");
  delta_ = (x_max - x_min) / static_cast<double>(levels() - 1);
}

double DiscretizationGrid::decode(std::uint64_t k) const {
  if (k >= levels()) throw std::out_of_range("grid index out of range");
  if (k == levels() - 1) return x_max_;  // keep the top endpoint exact
  return x_min_ + static_cast<double>(k) * delta_;
}

std::uint64_t DiscretizationGrid::nearest_index(double x) const {
  const double t = std::round((x - x_min_) / delta_);
  if (t <= 0.0) return 0;
  const double top = static_cast<double>(levels() - 1);
  if (t >= top) return levels() - 1;
  return static_cast<std::uint64_t>(t);
}

double pauli_diagonal_value(const std::vector<PauliZTerm>& terms,
                            std::uint64_t basis) {
  double e = 0.0;
  for (const PauliZTerm& t : terms) {
    // Each Z contributes its eigenvalue (-1)^bit; the product over the mask
    // is a parity.
    const int parity = std::popcount(t.z_mask & basis) & 1;
    e += parity ? -t.coefficient : t.coefficient;
  }
  return e;
}

DiagonalHamiltonian::DiagonalHamiltonian(
    std::vector<DiscretizationGrid> grids,
    std::function<double(const std::vector<double>&)> f)
    : grids_(std::move(grids)), f_(std::move(f)) {
  if (grids_.empty())
    throw std::invalid_argument("diagonal hamiltonian requires grids");
  for (const auto& g : grids_) width_ += g.k_qubits();
  if (width_ > kMaxScanWidth)
    throw UnsupportedProblemError("register width " + std::to_string(width_) +
                                  " exceeds " + std::to_string(kMaxScanWidth));
  if (width_ <= kTableWidth) {
    table_.resize(basis_size());
    for (std::uint64_t b = 0; b < basis_size(); ++b)
      table_[b] = f_(decode_coords(b));
  }
}

std::vector<double> DiagonalHamiltonian::decode_coords(
    std::uint64_t bitstring) const {
  std::vector<double> x(grids_.size());
  int shift = 0;
  for (std::size_t i = 0; i < grids_.size(); ++i) {
    const std::uint64_t mask = grids_[i].levels() - 1;
    x[i] = grids_[i].decode((bitstring >> shift) & mask);
    shift += grids_[i].k_qubits();
  }
  return x;
}

double DiagonalHamiltonian::energy(std::uint64_t bitstring) const {
  if (bitstring >= basis_size())
    throw std::out_of_range("bitstring outside register");
  if (!table_.empty()) return table_[bitstring];
  return f_(decode_coords(bitstring));
}

void DiagonalHamiltonian::attach_pauli_terms(std::vector<PauliZTerm> terms) {
  pauli_terms_ = std::move(terms);
}

DiagonalHamiltonian build_diagonal(const objectives::Objective& objective,
                                   std::vector<DiscretizationGrid> grids) {
  if (static_cast<int>(grids.size()) != objective.dims())
    throw std::invalid_argument("grid count must equal objective dims");
  return DiagonalHamiltonian(
      std::move(grids),
      [&objective](const std::vector<double>& x) { return objective.eval(x); });
}

DiagonalHamiltonian build_slice_diagonal(
    const objectives::Objective& objective, int dim, DiscretizationGrid grid) {
  if (!objective.separable())
    throw UnsupportedProblemError(objective.name() +
                                  " has no separable slices");
  if (dim < 0 || dim >= objective.dims())
    throw std::out_of_range("slice dimension out of range");
  return DiagonalHamiltonian(
      {std::move(grid)}, [&objective, dim](const std::vector<double>& x) {
        return objective.slice(dim, x[0]);
      });
}

namespace {

using TermMap = std::unordered_map<std::uint64_t, double>;

TermMap multiply(const TermMap& a, const TermMap& b) {
  TermMap out;
  out.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) out[ma ^ mb] += ca * cb;  // Z_i^2 = I
  return out;
}

}  // namespace

std::vector<PauliZTerm> pauli_expand(
    const objectives::Objective& objective,
    const std::vector<DiscretizationGrid>& grids) {
  const auto* monomials = objective.monomials();
  if (monomials == nullptr)
    throw NotExpandableError(objective.name() +
                             " is not polynomial in its variables");
  if (static_cast<int>(grids.size()) != objective.dims())
    throw std::invalid_argument("grid count must equal objective dims");
  int width = 0;
  for (const auto& g : grids) width += g.k_qubits();
  if (width > kTableWidth)
    throw UnsupportedProblemError("pauli expansion capped at width " +
                                  std::to_string(kTableWidth));

  // Variable operator per grid: x_min*I + delta * sum 2^k (I - Z_k)/2.
  std::vector<TermMap> var_ops;
  int shift = 0;
  for (const auto& g : grids) {
    TermMap op;
    double ident = g.x_min();
    for (int k = 0; k < g.k_qubits(); ++k) {
      const double w = g.delta() * static_cast<double>(std::uint64_t{1} << k);
      ident += 0.5 * w;
      op[std::uint64_t{1} << (shift + k)] -= 0.5 * w;
    }
    op[0] += ident;
    var_ops.push_back(std::move(op));
    shift += g.k_qubits();
  }

  TermMap total;
  for (const objectives::Monomial& m : *monomials) {
    TermMap term{{0, m.coeff}};
    for (std::size_t v = 0; v < m.powers.size(); ++v)
      for (int p = 0; p < m.powers[v]; ++p) term = multiply(term, var_ops[v]);
    for (const auto& [mask, coeff] : term) total[mask] += coeff;
  }

  std::vector<PauliZTerm> terms;
  terms.reserve(total.size());
  for (const auto& [mask, coeff] : total)
    if (coeff != 0.0) terms.push_back({coeff, mask});
  std::sort(terms.begin(), terms.end(),
            [](const PauliZTerm& a, const PauliZTerm& b) {
              return a.z_mask < b.z_mask;
            });
  return terms;
}

GridArgmin argmin_grid(const DiagonalHamiltonian& h) {
  GridArgmin best{0, h.energy(0)};
  for (std::uint64_t b = 1; b < h.basis_size(); ++b) {
    const double e = h.energy(b);
    if (e < best.energy) best = {b, e};
  }
  return best;
}

}  // namespace qseed::encoding
