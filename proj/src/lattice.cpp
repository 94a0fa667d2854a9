#include "eqd/lattice.hpp"

namespace eqd {

bool LatticeDescription::same_lattice(const LatticeDescription& o) const {
    if (basis.cols() != o.basis.cols()) throw std::invalid_argument("ambient dimension mismatch");
    if (denom == o.denom) return basis == o.basis;
    // Rescale both to a common denominator before comparing HNFs.
    BigInt l = big_lcm(denom, o.denom);
    auto scale_up = [&](const IntMatrix& b, const BigInt& d) {
        BigInt f = l / d;
        IntMatrix s = b;
        for (int r = 0; r < s.rows(); ++r)
            for (int c = 0; c < s.cols(); ++c) s.at(r, c) *= f;
        return hermite_normal_form(s).h;
    };
    return scale_up(basis, denom) == scale_up(o.basis, o.denom);
}

LatticeDescription make_lattice(const IntMatrix& generators) {
    if (generators.rows() == 0) throw std::invalid_argument("empty generator set");
    LatticeDescription out;
    HermiteForm hf = hermite_normal_form(generators);
    out.rank = hf.rank;
    out.basis = std::move(hf.h);
    out.denom = 1;
    out.volume = out.rank == 0 ? Rat(1) : Rat(fundamental_volume_int(out.basis));
    return out;
}

LatticeDescription make_lattice(const RatMatrix& generators) {
    if (generators.rows() == 0) throw std::invalid_argument("empty generator set");
    BigInt l = 1;
    for (int r = 0; r < generators.rows(); ++r)
        for (int c = 0; c < generators.cols(); ++c)
            l = big_lcm(l, BigInt(generators.at(r, c).get_den()));
    IntMatrix scaled(generators.rows(), generators.cols());
    for (int r = 0; r < generators.rows(); ++r)
        for (int c = 0; c < generators.cols(); ++c) {
            Rat x = generators.at(r, c) * Rat(l);
            scaled.at(r, c) = x.get_num();
        }
    LatticeDescription out;
    HermiteForm hf = hermite_normal_form(scaled);
    out.rank = hf.rank;
    out.basis = std::move(hf.h);
    out.denom = l;
    out.volume = out.rank == 0 ? Rat(1)
                               : Rat(fundamental_volume_int(out.basis)) /
                                     rat_pow(Rat(l), out.rank);
    return out;
}

Rat fundamental_volume(const RatMatrix& generators) {
    return make_lattice(generators).volume;
}

bool lattice_contains(const LatticeDescription& lat, const std::vector<Rat>& v) {
    if (static_cast<int>(v.size()) != lat.basis.cols())
        throw std::invalid_argument("dimension mismatch");
    std::vector<BigInt> scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat x = v[i] * Rat(lat.denom);
        if (x.get_den() != 1) return false;  // off the coordinate grid entirely
        scaled[i] = x.get_num();
    }
    return lattice_member(scaled, lat.basis).has_value();
}

}  // namespace eqd
