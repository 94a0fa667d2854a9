#pragma once

// Small dense rational matrices: exact covariance blocks, eigenvector
// verification, rank/echelon work. Determinants clear denominators and go
// through the fraction-free integer path.

#include "eqd/intmat.hpp"
#include "eqd/rational.hpp"

#include <vector>

namespace eqd {

class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    }
    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
    static RatMatrix from_int(const IntMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Rat& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    std::vector<Rat> row(int r) const;
    void append_row(const std::vector<Rat>& v);

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix scaled(const Rat& s) const;
    RatMatrix transposed() const;
    bool is_symmetric() const;

  private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

std::vector<Rat> mat_vec(const RatMatrix& m, const std::vector<Rat>& v);
Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b);

// Exact determinant: rows cleared to integers, then Bareiss.
Rat det_rat(const RatMatrix& m);

int rank_rat(const RatMatrix& m);

struct Echelon {
    RatMatrix reduced;            // reduced row echelon, unit pivots, zero rows dropped
    std::vector<int> pivot_cols;  // one per row of `reduced`
};

Echelon reduced_row_echelon(const RatMatrix& m);

// Coordinates of v in the row space of an echelon basis, if it lies there.
std::optional<std::vector<Rat>> solve_in_rowspace(const Echelon& e, const std::vector<Rat>& v);

}  // namespace eqd
