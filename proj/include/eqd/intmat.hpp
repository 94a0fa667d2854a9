#pragma once

// Exact integer matrices and the normal forms used for lattice work:
// row-style Hermite normal form, Smith normal form, and a fraction-free
// (Bareiss) determinant kept as an algorithmically independent cross-check
// of SNF-based volumes.

#include "eqd/rational.hpp"

#include <optional>
#include <vector>

namespace eqd {

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    std::vector<BigInt> row(int r) const;
    void append_row(const std::vector<BigInt>& v);

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::string str() const;  // TSV, for debugging

  private:
    int rows_, cols_;
    std::vector<BigInt> a_;
};

struct HermiteForm {
    IntMatrix h;   // `rank` nonzero rows in echelon position, canonical
    int rank = 0;
    // Unimodular row transform with h_full = u * input (same row count as
    // the input; only the first `rank` rows of u correspond to h).
    std::optional<IntMatrix> u;
};

// Row-style HNF: pivots positive, zeros below, entries above reduced into
// [0, pivot). Zero rows dropped. Preserves the row lattice over Z.
HermiteForm hermite_normal_form(const IntMatrix& a, bool want_transform = false);

struct SmithForm {
    std::vector<BigInt> invariants;  // d_1 | d_2 | ... | d_r, all positive
    int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& a);

// |det| of any basis of the row lattice == product of SNF invariants.
// Throws on an empty generator set.
BigInt fundamental_volume_int(const IntMatrix& generators);

// Fraction-free exact determinant (square matrices).
BigInt det_bareiss(const IntMatrix& a);

// Integer membership: coefficients c with c * basis_rows == v, if any.
// Requires basis_rows to have linearly independent rows.
std::optional<std::vector<BigInt>> lattice_member(const std::vector<BigInt>& v,
                                                  const IntMatrix& basis_rows);

// Row lattices coincide (HNF comparison). Throws on ambient dim mismatch.
bool lattice_equal(const IntMatrix& gens1, const IntMatrix& gens2);

}  // namespace eqd
