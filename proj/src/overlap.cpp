#include "eqd/overlap.hpp"

#include <algorithm>
#include <set>

namespace eqd {

int pair_flat(int i, int j, int n) {
    if (!(1 <= i && i < j && j <= n)) throw std::invalid_argument("bad pair index");
    return (i - 1) * n - i * (i - 1) / 2 + (j - i - 1);
}

std::vector<PairIndex> all_pairs(int n) {
    std::vector<PairIndex> out;
    out.reserve(static_cast<std::size_t>(pair_count(n)));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back({i, j});
    return out;
}

std::vector<BigInt> overlap_vector(std::uint32_t subset, int n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    std::vector<BigInt> v(static_cast<std::size_t>(pair_count(n)));
    std::size_t k = 0;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j, ++k) {
            bool bi = (subset >> (i - 1)) & 1u;
            bool bj = (subset >> (j - 1)) & 1u;
            if (bi != bj) v[k] = 1;
        }
    return v;
}

std::vector<BigInt> inclusion_exclusion_check(std::uint32_t a, std::uint32_t b, int n) {
    if (a & b) throw std::invalid_argument("subsets must be disjoint");
    auto ha = overlap_vector(a, n);
    auto hb = overlap_vector(b, n);
    auto hab = overlap_vector(a | b, n);
    std::vector<BigInt> out(ha.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = ha[k] + hb[k] - hab[k];
    // The identity: the result is 2 e_{i,j} summed over split pairs i in A, j in B.
    std::size_t k = 0;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j, ++k) {
            bool split = (((a >> (i - 1)) & 1u) && ((b >> (j - 1)) & 1u)) ||
                         (((b >> (i - 1)) & 1u) && ((a >> (j - 1)) & 1u));
            if (out[k] != (split ? 2 : 0))
                throw std::logic_error("inclusion-exclusion identity violated");
        }
    return out;
}

std::vector<BigInt> embedded_overlap(std::uint32_t subset, int n) {
    auto h = overlap_vector(subset, n);
    std::vector<BigInt> v(h.size() - 1);
    for (std::size_t k = 1; k < h.size(); ++k) v[k - 1] = h[k] - h[0];
    return v;
}

namespace {

std::uint32_t interval_mask(int upto) {  // [1:upto]
    return (1u << upto) - 1u;
}

}  // namespace

IntMatrix basis_lat_H(int n, int substitute_pair) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    const int m = pair_count(n);
    IntMatrix b(0, m);
    for (int i = 1; i <= n - 1; ++i) b.append_row(overlap_vector(interval_mask(i), n));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<BigInt> row(static_cast<std::size_t>(m));
            int p = pair_flat(i, j, n);
            if (p == substitute_pair) {
                for (auto& x : row) x = 2;
            } else {
                row[static_cast<std::size_t>(p)] = 2;
            }
            b.append_row(row);
        }
    return b;
}

LatticeDescription basis_lat_V_binary(int n) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    const int m = pair_count(n);
    IntMatrix b(0, m - 1);
    for (int i = 1; i <= n - 1; ++i) b.append_row(embedded_overlap(interval_mask(i), n));
    for (int j = 3; j < n; ++j)
        for (int i = 1; i < j; ++i) {
            std::vector<BigInt> row(static_cast<std::size_t>(m - 1));
            row[static_cast<std::size_t>(pair_flat(i, j, n) - 1)] = 2;
            b.append_row(row);
        }
    return make_lattice(b);
}

IntMatrix image_H(int n) {
    const int m = pair_count(n);
    IntMatrix img(0, m);
    for (std::uint32_t s = 0; s < (1u << n); ++s) img.append_row(overlap_vector(s, n));
    return img;
}

IntMatrix image_H_star(int n) {
    const int m = pair_count(n);
    IntMatrix img(0, m - 1);
    for (std::uint32_t s = 0; s < (1u << n); ++s) img.append_row(embedded_overlap(s, n));
    return img;
}

ProductSets product_sets(const std::vector<SurdSum>& support) {
    std::set<SurdSum> x1, x2;
    for (const auto& x : support) {
        if (x.is_zero()) continue;
        for (const auto& y : support) {
            if (y.is_zero()) continue;
            SurdSum p = SurdSum(Rat(2)) * x * y;
            if (!p.is_zero()) x1.insert(p);
        }
    }
    x2 = x1;
    for (const auto& x : support) {
        if (x.is_zero()) continue;
        SurdSum s = square(x);
        if (!s.is_zero()) x2.insert(s);
    }
    ProductSets out;
    out.x1.assign(x1.begin(), x1.end());
    out.x2.assign(x2.begin(), x2.end());
    return out;
}

std::vector<Rat> SpanEmbedding::coords(const SurdSum& v) const {
    QSpanVector amb = to_qspan(v, ambient);
    if (identity) return amb.coords;
    auto sol = solve_in_rowspace(span, amb.coords);
    if (!sol) throw BasisIncomplete("value lies outside the span basis: " + v.str());
    return *sol;
}

SpanEmbedding make_span_embedding(const std::vector<SurdSum>& support) {
    ProductSets ps = product_sets(support);
    if (ps.x2.empty())
        throw std::invalid_argument("degenerate support: no nonzero squares or products");
    SpanEmbedding emb;
    emb.ambient = build_hamel_basis(ps.x2);
    RatMatrix coords(0, static_cast<int>(emb.ambient.size()));
    for (const auto& v : ps.x2) coords.append_row(to_qspan(v, emb.ambient).coords);
    emb.span = reduced_row_echelon(coords);
    emb.ell = static_cast<int>(emb.span.pivot_cols.size());
    emb.identity = emb.ell == static_cast<int>(emb.ambient.size());
    return emb;
}

std::vector<SurdSum> squared_diff_vector(const std::vector<SurdSum>& xs) {
    const int n = static_cast<int>(xs.size());
    std::vector<SurdSum> out;
    out.reserve(static_cast<std::size_t>(pair_count(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back(square(xs[std::size_t(i)] - xs[std::size_t(j)]));
    return out;
}

std::vector<Rat> squared_diff_embedded(const std::vector<SurdSum>& xs, const SpanEmbedding& emb) {
    auto sq = squared_diff_vector(xs);
    std::vector<Rat> flat;
    flat.reserve(sq.size() * static_cast<std::size_t>(emb.ell));
    for (const auto& v : sq) {
        auto c = emb.coords(v);
        flat.insert(flat.end(), c.begin(), c.end());
    }
    return flat;
}

std::vector<Rat> embedded_squared_diff(const std::vector<SurdSum>& xs, const SpanEmbedding& emb) {
    auto sq = squared_diff_vector(xs);
    std::vector<Rat> flat;
    flat.reserve((sq.size() - 1) * static_cast<std::size_t>(emb.ell));
    for (std::size_t p = 1; p < sq.size(); ++p) {
        auto c = emb.coords(sq[p] - sq[0]);
        flat.insert(flat.end(), c.begin(), c.end());
    }
    return flat;
}

namespace {

// Rational basis rows of the lattice generated by the coordinates of `vals`.
RatMatrix lattice_basis_rows(const std::vector<SurdSum>& vals, const SpanEmbedding& emb) {
    RatMatrix gens(0, emb.ell);
    for (const auto& v : vals) gens.append_row(emb.coords(v));
    LatticeDescription lat = make_lattice(gens);
    RatMatrix rows(0, emb.ell);
    Rat inv_den = Rat(1) / Rat(lat.denom);
    for (int r = 0; r < lat.basis.rows(); ++r) {
        std::vector<Rat> row(static_cast<std::size_t>(emb.ell));
        for (int c = 0; c < emb.ell; ++c) row[std::size_t(c)] = Rat(lat.basis.at(r, c)) * inv_den;
        rows.append_row(row);
    }
    return rows;
}

}  // namespace

RatMatrix basis_lat_H_X(const std::vector<SurdSum>& support, int n, const SpanEmbedding& emb) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    ProductSets ps = product_sets(support);
    RatMatrix b1 = lattice_basis_rows(ps.x1, emb);
    RatMatrix b2 = lattice_basis_rows(ps.x2, emb);
    const int m = pair_count(n);
    const int ell = emb.ell;
    RatMatrix out(0, m * ell);
    // u (x) H([1:i])
    for (int r = 0; r < b2.rows(); ++r)
        for (int i = 1; i <= n - 1; ++i) {
            auto h = overlap_vector(interval_mask(i), n);
            std::vector<Rat> row(static_cast<std::size_t>(m * ell));
            for (int p = 0; p < m; ++p) {
                if (h[std::size_t(p)] == 0) continue;
                for (int s = 0; s < ell; ++s)
                    row[std::size_t(p * ell + s)] = Rat(h[std::size_t(p)]) * b2.at(r, s);
            }
            out.append_row(row);
        }
    // v (x) e_{i,j}, i < j < n
    for (int r = 0; r < b1.rows(); ++r)
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int p = pair_flat(i, j, n);
                std::vector<Rat> row(static_cast<std::size_t>(m * ell));
                for (int s = 0; s < ell; ++s) row[std::size_t(p * ell + s)] = b1.at(r, s);
                out.append_row(row);
            }
    return out;
}

RatMatrix basis_lat_V_X(const std::vector<SurdSum>& support, int n, const SpanEmbedding& emb) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    ProductSets ps = product_sets(support);
    RatMatrix b1 = lattice_basis_rows(ps.x1, emb);
    RatMatrix b2 = lattice_basis_rows(ps.x2, emb);
    const int m = pair_count(n);
    const int ell = emb.ell;
    RatMatrix out(0, (m - 1) * ell);
    for (int r = 0; r < b2.rows(); ++r)
        for (int i = 1; i <= n - 1; ++i) {
            auto h = embedded_overlap(interval_mask(i), n);
            std::vector<Rat> row(static_cast<std::size_t>((m - 1) * ell));
            for (int p = 0; p < m - 1; ++p) {
                if (h[std::size_t(p)] == 0) continue;
                for (int s = 0; s < ell; ++s)
                    row[std::size_t(p * ell + s)] = Rat(h[std::size_t(p)]) * b2.at(r, s);
            }
            out.append_row(row);
        }
    for (int r = 0; r < b1.rows(); ++r)
        for (int j = 3; j < n; ++j)
            for (int i = 1; i < j; ++i) {
                int p = pair_flat(i, j, n) - 1;
                std::vector<Rat> row(static_cast<std::size_t>((m - 1) * ell));
                for (int s = 0; s < ell; ++s) row[std::size_t(p * ell + s)] = b1.at(r, s);
                out.append_row(row);
            }
    return out;
}

GeneralVolume volume_lat_V_general(const std::vector<SurdSum>& support, int n,
                                   const SpanEmbedding& emb) {
    ProductSets ps = product_sets(support);
    RatMatrix g1(0, emb.ell), g2(0, emb.ell);
    for (const auto& v : ps.x1) g1.append_row(emb.coords(v));
    for (const auto& v : ps.x2) g2.append_row(emb.coords(v));
    GeneralVolume out;
    out.lat_x1 = fundamental_volume(g1);
    out.lat_x2 = fundamental_volume(g2);
    const int m = pair_count(n);
    out.volume = rat_pow(out.lat_x1, m - n) * rat_pow(out.lat_x2, n - 1);
    return out;
}

namespace {

int gf2_rank(std::vector<std::uint64_t> rows) {
    int rank = 0;
    for (int bit = 63; bit >= 0 && rank < static_cast<int>(rows.size()); --bit) {
        std::uint64_t mask = 1ull << bit;
        int p = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[std::size_t(r)] & mask) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[std::size_t(p)], rows[std::size_t(rank)]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && (rows[std::size_t(r)] & mask))
                rows[std::size_t(r)] ^= rows[std::size_t(rank)];
        ++rank;
    }
    return rank;
}

}  // namespace

Z2RatioResult volume_ratio_z2(const std::vector<SurdSum>& support) {
    SpanEmbedding emb = make_span_embedding(support);
    if (emb.ell > 62) throw std::invalid_argument("span dimension too large for the mod-2 route");

    std::vector<SurdSum> nonzero;
    for (const auto& x : support)
        if (!x.is_zero()) nonzero.push_back(x);

    // U rows: squares x_i^2. V rows: cross products 2 x_i x_j, i != j.
    std::vector<std::vector<Rat>> urows, vrows;
    for (const auto& x : nonzero) urows.push_back(emb.coords(square(x)));
    for (std::size_t i = 0; i < nonzero.size(); ++i)
        for (std::size_t j = i + 1; j < nonzero.size(); ++j)
            vrows.push_back(emb.coords(SurdSum(Rat(2)) * nonzero[i] * nonzero[j]));

    // Clear denominators globally, then strip each column's common power of 2.
    BigInt lcm = 1;
    for (const auto& rs : {urows, vrows})
        for (const auto& row : rs)
            for (const auto& x : row) lcm = big_lcm(lcm, BigInt(x.get_den()));
    auto to_int = [&](const std::vector<Rat>& row) {
        std::vector<BigInt> out(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            Rat x = row[c] * Rat(lcm);
            out[c] = x.get_num();
        }
        return out;
    };
    std::vector<std::vector<BigInt>> iu, iv;
    for (const auto& r : urows) iu.push_back(to_int(r));
    for (const auto& r : vrows) iv.push_back(to_int(r));

    const int ell = emb.ell;
    for (int c = 0; c < ell; ++c) {
        long rho = -1;
        for (const auto* rs : {&iu, &iv})
            for (const auto& row : *rs) {
                const BigInt& x = row[std::size_t(c)];
                if (x == 0) continue;
                long v2 = static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
                rho = rho < 0 ? v2 : std::min(rho, v2);
            }
        if (rho <= 0) continue;
        for (auto* rs : {&iu, &iv})
            for (auto& row : *rs)
                mpz_fdiv_q_2exp(row[std::size_t(c)].get_mpz_t(), row[std::size_t(c)].get_mpz_t(),
                                static_cast<mp_bitcnt_t>(rho));
    }

    auto to_bits = [&](const std::vector<std::vector<BigInt>>& rs) {
        std::vector<std::uint64_t> bits;
        for (const auto& row : rs) {
            std::uint64_t b = 0;
            for (int c = 0; c < ell; ++c)
                if (mpz_odd_p(row[std::size_t(c)].get_mpz_t())) b |= 1ull << c;
            bits.push_back(b);
        }
        return bits;
    };
    std::vector<std::uint64_t> abits = to_bits(iu), vbits = to_bits(iv);
    abits.insert(abits.end(), vbits.begin(), vbits.end());

    Z2RatioResult out;
    out.ell = ell;
    int rank_a = gf2_rank(abits);
    if (rank_a != ell) return out;  // hypothesis not met; non-fatal
    out.hypothesis_met = true;
    out.r = gf2_rank(vbits);
    out.ratio = rat_pow(Rat(2), ell - out.r);
    return out;
}

}  // namespace eqd
