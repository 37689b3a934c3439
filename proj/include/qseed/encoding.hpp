#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qseed/objectives.hpp"

namespace qseed::encoding {

// Widths above kTableWidth skip the eager energy table; widths above
// kMaxScanWidth are rejected outright (exhaustive callers would not fit).
inline constexpr int kTableWidth = 12;
inline constexpr int kMaxScanWidth = 24;

// Uniform grid over [x_min, x_max] with 2^k_qubits levels; both endpoints
// are grid points, so delta = (x_max - x_min) / (2^k_qubits - 1).
class DiscretizationGrid {
 public:
  DiscretizationGrid(double x_min, double x_max, int k_qubits);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int k_qubits() const { return k_; }
  double delta() const { return delta_; }
  std::uint64_t levels() const { return std::uint64_t{1} << k_; }

  // x_min + k * delta; the top index returns x_max exactly.
  double decode(std::uint64_t k) const;

  // Index whose decoded coordinate is closest to x (clamped to the grid).
  std::uint64_t nearest_index(double x) const;

 private:
  double x_min_;
  double x_max_;
  int k_;
  double delta_;
};

// (I - sigma_z)/2 eigenvalue: maps the sigma_z eigenvalue +1 -> 0, -1 -> 1.
constexpr int number_operator_eigenvalue(int z_eigenvalue) {
  return (1 - z_eigenvalue) / 2;
}

constexpr int bit_of(std::uint64_t basis, int qubit) {
  return static_cast<int>((basis >> qubit) & 1u);
}

// One tensor product of sigma_z factors; set bits of z_mask mark the qubits
// carrying a Z. The identity term has an empty mask.
struct PauliZTerm {
  double coefficient = 0.0;
  std::uint64_t z_mask = 0;
};

// Value of a Z-product term list on a basis state.
double pauli_diagonal_value(const std::vector<PauliZTerm>& terms,
                            std::uint64_t basis);

// Objective embedded on a register: energy(bitstring) is the objective at
// the decoded grid coordinates. Diagonal by construction, so evaluation is
// classical. Qubit 0 of the register is the lowest bit of grid 0.
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(std::vector<DiscretizationGrid> grids,
                      std::function<double(const std::vector<double>&)> f);

  const std::vector<DiscretizationGrid>& grids() const { return grids_; }
  int total_width() const { return width_; }
  std::uint64_t basis_size() const { return std::uint64_t{1} << width_; }

  double energy(std::uint64_t bitstring) const;
  std::vector<double> decode_coords(std::uint64_t bitstring) const;

  // Present only after attach_pauli_terms.
  const std::vector<PauliZTerm>* pauli_terms() const {
    return pauli_terms_.empty() ? nullptr : &pauli_terms_;
  }
  void attach_pauli_terms(std::vector<PauliZTerm> terms);

 private:
  std::vector<DiscretizationGrid> grids_;
  std::function<double(const std::vector<double>&)> f_;
  int width_ = 0;
  std::vector<double> table_;  // eager energies, width <= kTableWidth only
  std::vector<PauliZTerm> pauli_terms_;
};

// Joint encoding: one grid per objective variable.
DiagonalHamiltonian build_diagonal(const objectives::Objective& objective,
                                   std::vector<DiscretizationGrid> grids);

// Single-dimension slice of a separable objective.
DiagonalHamiltonian build_slice_diagonal(const objectives::Objective& objective,
                                         int dim, DiscretizationGrid grid);

// Symbolic expansion of a polynomial objective into Z-products by
// substituting the variable operators and expanding; verification path for
// build_diagonal. Non-polynomial objectives are rejected.
std::vector<PauliZTerm> pauli_expand(const objectives::Objective& objective,
                                     const std::vector<DiscretizationGrid>& grids);

// Exhaustive scan; ties broken by lowest bitstring index.
struct GridArgmin {
  std::uint64_t bitstring = 0;
  double energy = 0.0;
};
GridArgmin argmin_grid(const DiagonalHamiltonian& h);

}  // namespace qseed::encoding
