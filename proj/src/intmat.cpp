#include "eqd/intmat.hpp"

#include <sstream>

namespace eqd {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r) {
        if (rows[std::size_t(r)].size() != rows[0].size())
            throw std::invalid_argument("ragged rows");
        for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[std::size_t(r)][std::size_t(c)];
    }
    return m;
}

std::vector<BigInt> IntMatrix::row(int r) const {
    std::vector<BigInt> v(static_cast<std::size_t>(cols_));
    for (int c = 0; c < cols_; ++c) v[std::size_t(c)] = at(r, c);
    return v;
}

void IntMatrix::append_row(const std::vector<BigInt>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            if (c) os << '\t';
            os << at(r, c).get_str();
        }
        os << '\n';
    }
    return os.str();
}

namespace {

void row_swap(IntMatrix& m, int i, int j) {
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void row_negate(IntMatrix& m, int i) {
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

// row_i -= q * row_j
void row_submul(IntMatrix& m, int i, int j, const BigInt& q) {
    if (q == 0) return;
    for (int c = 0; c < m.cols(); ++c) m.at(i, c) -= q * m.at(j, c);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& a, bool want_transform) {
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    int pivot_row = 0;
    std::vector<int> pivot_cols;
    for (int c = 0; c < h.cols() && pivot_row < h.rows(); ++c) {
        // Euclidean reduction in column c, rows >= pivot_row.
        for (;;) {
            int best = -1;
            for (int r = pivot_row; r < h.rows(); ++r) {
                if (h.at(r, c) != 0 &&
                    (best < 0 || cmp(abs(h.at(r, c)), abs(h.at(best, c))) < 0))
                    best = r;
            }
            if (best < 0) break;
            if (best != pivot_row) {
                row_swap(h, pivot_row, best);
                if (want_transform) row_swap(u, pivot_row, best);
            }
            if (h.at(pivot_row, c) < 0) {
                row_negate(h, pivot_row);
                if (want_transform) row_negate(u, pivot_row);
            }
            bool clean = true;
            for (int r = pivot_row + 1; r < h.rows(); ++r) {
                if (h.at(r, c) == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(r, c).get_mpz_t(),
                           h.at(pivot_row, c).get_mpz_t());
                row_submul(h, r, pivot_row, q);
                if (want_transform) row_submul(u, r, pivot_row, q);
                if (h.at(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(pivot_row, c) != 0) {
            pivot_cols.push_back(c);
            ++pivot_row;
        }
    }
    int rank = pivot_row;
    // Reduce entries above each pivot into [0, pivot), left pivots first so
    // later reductions cannot disturb already-reduced columns.
    for (int r = 1; r < rank; ++r) {
        int c = pivot_cols[std::size_t(r)];
        for (int i = 0; i < r; ++i) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
            row_submul(h, i, r, q);
            if (want_transform) row_submul(u, i, r, q);
        }
    }
    HermiteForm out;
    out.rank = rank;
    IntMatrix hr(rank, h.cols());
    for (int r = 0; r < rank; ++r)
        for (int c = 0; c < h.cols(); ++c) hr.at(r, c) = h.at(r, c);
    out.h = std::move(hr);
    if (want_transform) out.u = std::move(u);
    return out;
}

SmithForm smith_normal_form(const IntMatrix& a) {
    IntMatrix m = a;
    const int R = m.rows(), C = m.cols();
    SmithForm out;
    int k = 0;
    auto col_submul = [&](int i, int j, const BigInt& q) {
        if (q == 0) return;
        for (int r = k; r < R; ++r) m.at(r, i) -= q * m.at(r, j);
    };
    while (k < R && k < C) {
        // Find the smallest |nonzero| pivot in the trailing submatrix.
        int pr = -1, pc = -1;
        for (int r = k; r < R; ++r)
            for (int c = k; c < C; ++c)
                if (m.at(r, c) != 0 &&
                    (pr < 0 || cmp(abs(m.at(r, c)), abs(m.at(pr, pc))) < 0)) {
                    pr = r;
                    pc = c;
                }
        if (pr < 0) break;
        row_swap(m, k, pr);
        for (int r = 0; r < R; ++r) std::swap(m.at(r, k), m.at(r, pc));
        if (m.at(k, k) < 0)
            for (int c = k; c < C; ++c) m.at(k, c) = -m.at(k, c);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear column k.
            for (int r = k + 1; r < R; ++r) {
                if (m.at(r, k) == 0) continue;
                BigInt q = m.at(r, k) / m.at(k, k);
                for (int c = k; c < C; ++c) m.at(r, c) -= q * m.at(k, c);
                if (m.at(r, k) != 0) {
                    row_swap(m, k, r);  // remainder is smaller: Euclid step
                    settled = false;
                }
            }
            if (!settled) continue;
            // Clear row k.
            for (int c = k + 1; c < C; ++c) {
                if (m.at(k, c) == 0) continue;
                BigInt q = m.at(k, c) / m.at(k, k);
                col_submul(c, k, q);
                if (m.at(k, c) != 0) {
                    for (int r = k; r < R; ++r) std::swap(m.at(r, k), m.at(r, c));
                    settled = false;
                }
            }
            if (!settled) continue;
            if (m.at(k, k) < 0)
                for (int c = k; c < C; ++c) m.at(k, c) = -m.at(k, c);
            // Pivot must divide every trailing entry for the divisor chain.
            for (int r = k + 1; r < R && settled; ++r)
                for (int c = k + 1; c < C && settled; ++c)
                    if (m.at(r, c) % m.at(k, k) != 0) {
                        for (int cc = k; cc < C; ++cc) m.at(k, cc) += m.at(r, cc);
                        settled = false;
                    }
        }
        out.invariants.push_back(m.at(k, k));
        ++k;
    }
    out.rank = static_cast<int>(out.invariants.size());
    return out;
}

BigInt fundamental_volume_int(const IntMatrix& generators) {
    if (generators.rows() == 0) throw std::invalid_argument("empty generator set");
    SmithForm s = smith_normal_form(generators);
    BigInt vol = 1;
    for (const auto& d : s.invariants) vol *= d;
    return vol;
}

BigInt det_bareiss(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m.at(r, k) != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            row_swap(m, k, swap_row);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

std::optional<std::vector<BigInt>> lattice_member(const std::vector<BigInt>& v,
                                                  const IntMatrix& basis_rows) {
    if (static_cast<int>(v.size()) != basis_rows.cols())
        throw std::invalid_argument("dimension mismatch");
    HermiteForm hf = hermite_normal_form(basis_rows, /*want_transform=*/true);
    if (hf.rank != basis_rows.rows())
        throw std::invalid_argument("basis rows are linearly dependent");
    std::vector<BigInt> residual = v;
    std::vector<BigInt> ch(static_cast<std::size_t>(hf.rank));
    for (int r = 0; r < hf.rank; ++r) {
        int pc = -1;
        for (int c = 0; c < hf.h.cols(); ++c)
            if (hf.h.at(r, c) != 0) {
                pc = c;
                break;
            }
        BigInt q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[std::size_t(pc)].get_mpz_t(),
                    hf.h.at(r, pc).get_mpz_t());
        if (rem != 0) return std::nullopt;
        ch[std::size_t(r)] = q;
        for (int c = 0; c < hf.h.cols(); ++c) residual[std::size_t(c)] -= q * hf.h.at(r, c);
    }
    for (const auto& x : residual)
        if (x != 0) return std::nullopt;
    // Coefficients over the original rows: c = ch * U.
    std::vector<BigInt> coeffs(static_cast<std::size_t>(basis_rows.rows()));
    for (int j = 0; j < basis_rows.rows(); ++j) {
        BigInt s = 0;
        for (int r = 0; r < hf.rank; ++r) s += ch[std::size_t(r)] * hf.u->at(r, j);
        coeffs[std::size_t(j)] = s;
    }
    return coeffs;
}

bool lattice_equal(const IntMatrix& gens1, const IntMatrix& gens2) {
    if (gens1.cols() != gens2.cols()) throw std::invalid_argument("ambient dimension mismatch");
    return hermite_normal_form(gens1).h == hermite_normal_form(gens2).h;
}

}  // namespace eqd
