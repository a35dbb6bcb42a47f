/*
   Copyright 2026 The ffqf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ffqf/localgenus.hpp"

#include <algorithm>
#include <set>

#include "ffqf/error.hpp"
#include "ffqf/factor.hpp"

namespace ffqf {

namespace {

int chi_minus_one(const Field& F, int residue_degree) {
    // -1 is a square in F_{q^d} iff q^d = 1 mod 4.
    std::uint64_t qd = 1;
    for (int i = 0; i < residue_degree; ++i) qd = (qd * F.q()) % 4;
    return qd == 1 ? 1 : -1;
}

Poly monic_irreducible(const Poly& p) {
    if (p.degree() < 1 || !is_irreducible(p)) throw DomainError(p.to_string() + " is not an irreducible polynomial");
    return p.monic();
}

// Residue form <u_1, ..., u_r> over A/p.
bool residue_represents(const std::vector<Poly>& units, const Poly& c, const Poly& p) {
    if (units.empty()) return false;
    if (units.size() == 1) return residue_char_unchecked(c, p) * residue_char_unchecked(units[0], p) == 1;
    return true;
}

bool residue_isotropic(const std::vector<Poly>& units, const Poly& p) {
    if (units.size() <= 1) return false;
    if (units.size() == 2) return residue_char_unchecked(-(units[0] * units[1]) % p, p) == 1;
    return true;
}

}  // namespace

Place Place::finite(const Poly& p) {
    Poly m = monic_irreducible(p);
    const Field& F = m.field();
    return Place(F, std::move(m));
}

const Poly& Place::poly() const {
    if (!p_) throw DomainError("the infinite place has no polynomial");
    return *p_;
}

int Place::valuation(const Poly& f) const {
    if (f.is_zero()) throw DomainError("valuation of zero");
    return p_ ? ffqf::valuation(f, *p_) : -f.degree();
}

int Place::unit_char(const Poly& f) const {
    if (f.is_zero()) throw DomainError("character of zero");
    if (!p_) return field_->legendre(f.lead());
    Poly u = f;
    for (int v = ffqf::valuation(f, *p_); v > 0; --v) u = exact_div(u, *p_);
    return residue_char_unchecked(u, *p_);
}

int hilbert_symbol(const Poly& f, const Poly& g, const Place& v) {
    if (f.is_zero() || g.is_zero()) throw DomainError("Hilbert symbol of zero");
    const int a = v.valuation(f), b = v.valuation(g);
    int s = 1;
    if (b % 2) s *= v.unit_char(f);
    if (a % 2) s *= v.unit_char(g);
    if (a % 2 && b % 2) s *= chi_minus_one(v.field(), v.residue_degree());
    return s;
}

std::vector<Place> relevant_places(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("relevant places of zero");
    std::vector<Place> out;
    std::set<Poly> seen;
    for (const auto& h : {f, g})
        if (h.degree() > 0)
            for (const auto& [p, e] : factor(h).factors)
                if (seen.insert(p).second) out.push_back(Place::finite(p));
    out.push_back(Place::infinity(f.field()));
    return out;
}

int hasse_invariant(const Form& Q, const Place& v) {
    const auto d = diagonalize_over_k(Q);
    int s = 1;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) s *= hilbert_symbol(d[i], d[j], v);
    return s;
}

PadicDiagonal padic_diagonalize(const Form& Q, const Poly& p_in) {
    const Poly p = monic_irreducible(p_in);
    const Field& F = Q.field();
    const int vd = valuation(discriminant(Q), p);
    const int N = 2 * vd + 2;
    const Poly mod = pow(p, static_cast<unsigned>(N));
    int n = Q.rank();
    PolyMatrix M = Q.gram();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = M(i, j) % mod;
    auto val = [&](const Poly& x) { return x.is_zero() ? N : valuation(x, p); };
    auto divide_out = [&](Poly x, int s) {
        for (int i = 0; i < s; ++i) x = exact_div(x, p);
        return x;
    };

    std::vector<int> active(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) active[static_cast<std::size_t>(i)] = i;
    PadicDiagonal out;
    while (!active.empty()) {
        int best = N + 1, bi = -1, bj = -1;
        for (int i : active)
            for (int j : active) {
                if (j < i) continue;
                const int v = val(M(i, j));
                if (v < best || (v == best && i == j && bi != bj)) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best >= N) throw DomainError("p-adic diagonalization ran out of precision");
        if (bi != bj) {
            // e_i <- e_i + e_j; the new diagonal entry has the off-diagonal valuation.
            for (int k = 0; k < Q.rank(); ++k) M(bi, k) = (M(bi, k) + M(bj, k)) % mod;
            for (int k = 0; k < Q.rank(); ++k) M(k, bi) = (M(k, bi) + M(k, bj)) % mod;
        }
        const int i = bi;
        const int s = val(M(i, i));
        if (s != best) throw DomainError("p-adic diagonalization ran out of precision");
        const Poly u = divide_out(M(i, i), s);
        const Poly u_inv = inverse_mod(u, mod);
        active.erase(std::find(active.begin(), active.end(), i));
        std::vector<Poly> col;
        for (int j : active) col.push_back(divide_out(M(j, i), s) * u_inv % mod);
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t b = 0; b < active.size(); ++b) {
                const int j = active[a], k = active[b];
                M(j, k) = (M(j, k) - col[a] * M(i, k)) % mod;
            }
        out.scales.push_back(s);
        out.units.push_back(u % p);
    }
    (void)F;
    return out;
}

JordanInvariant jordan_invariants(const Form& Q, const Poly& p) {
    const PadicDiagonal d = padic_diagonalize(Q, p);
    const Poly pm = p.monic();
    std::map<int, JordanBlock> blocks;
    for (std::size_t i = 0; i < d.scales.size(); ++i) {
        JordanBlock& b = blocks[d.scales[i]];
        b.scale = d.scales[i];
        ++b.rank;
        b.unit_det_char *= residue_char_unchecked(d.units[i], pm);
    }
    JordanInvariant j;
    for (const auto& [s, b] : blocks) j.blocks.push_back(b);
    return j;
}

std::string JordanInvariant::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        s += (i ? ", (" : "(") + std::to_string(b.scale) + ", " + std::to_string(b.rank) + ", " +
             (b.unit_det_char > 0 ? "+1" : "-1") + ")";
    }
    return s + "]";
}

GenusSymbol genus_symbol(const Form& Q) {
    const Poly D = discriminant(Q);
    GenusSymbol g{D, square_class(D), {}, {}};
    if (D.degree() > 0)
        for (const auto& [p, e] : factor(D).factors) g.finite_data.emplace(p, jordan_invariants(Q, p));
    g.infinity_data.disc_degree_parity = D.degree() % 2;
    g.infinity_data.disc_lead_char = Q.field().legendre(D.lead());
    g.infinity_data.hasse = hasse_invariant(Q, Place::infinity(Q.field()));
    return g;
}

std::string GenusSymbol::to_string() const {
    std::string s = "disc " + disc.to_string() + ";";
    for (const auto& [p, j] : finite_data) s += " " + p.to_string() + ": " + j.to_string() + ";";
    s += " inf: (" + std::to_string(infinity_data.disc_degree_parity) + ", " +
         (infinity_data.disc_lead_char > 0 ? "+1" : "-1") + ", " + (infinity_data.hasse > 0 ? "+1" : "-1") + ")";
    return s;
}

bool same_genus(const Form& Q, const Form& Q2) {
    if (&Q.field() != &Q2.field()) throw DomainError("forms over different fields");
    if (Q.rank() != Q2.rank() || disc_class(Q) != disc_class(Q2)) return false;
    return genus_symbol(Q) == genus_symbol(Q2);
}

bool local_represents(const Form& Q, const Poly& f, const Poly& p_in) {
    if (f.is_zero()) throw DomainError("local_represents needs f != 0");
    const Poly p = monic_irreducible(p_in);
    const PadicDiagonal d = padic_diagonalize(Q, p);
    int e = valuation(f, p);
    Poly w = f;
    for (int i = 0; i < e; ++i) w = exact_div(w, p);
    w = w % p;
    std::vector<int> scales = d.scales;
    // Sum p^{s_i} u_i x_i^2 = p^e w. If the unit block cannot vanish
    // nontrivially mod p, its coordinates are divisible by p: scale it by p^2,
    // then divide the whole equation by p.
    while (true) {
        std::vector<Poly> unit_block;
        for (std::size_t i = 0; i < scales.size(); ++i)
            if (scales[i] == 0) unit_block.push_back(d.units[i]);
        if (e == 0) return residue_represents(unit_block, w, p);
        if (residue_isotropic(unit_block, p)) return true;
        for (auto& s : scales) s = s == 0 ? 1 : s - 1;
        --e;
    }
}

bool field_represents(const Form& Q, const Poly& f, const Place& v) {
    if (f.is_zero()) throw DomainError("field_represents needs f != 0");
    auto d = diagonalize_over_k(Q);
    // Q anisotropic at v: f is a value iff Q + <-f> is isotropic. Over a local
    // field with odd residue characteristic that happens iff one of the two
    // residue forms (even and odd valuation entries) is isotropic.
    auto isotropic = [&](const std::vector<Poly>& entries) {
        auto residue_iso = [&](int parity) {
            std::vector<const Poly*> part;
            for (const auto& e : entries)
                if ((v.valuation(e) % 2 != 0) == (parity != 0)) part.push_back(&e);
            if (part.size() <= 1) return false;
            if (part.size() >= 3) return true;
            return v.unit_char(-(*part[0] * *part[1])) == 1;
        };
        return residue_iso(0) || residue_iso(1);
    };
    if (isotropic(d)) return true;
    d.push_back(-f);
    return isotropic(d);
}

}  // namespace ffqf
