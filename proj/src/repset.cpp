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

#include "ffqf/repset.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "ffqf/error.hpp"

namespace ffqf {

namespace {

using Coeffs = std::vector<std::int64_t>;

// Enumeration of Q(x) over the coordinate box given by per-coordinate degree
// bounds on a reduced form. The fast path works on integer coefficient arrays
// over prime fields; anything else goes through Poly arithmetic.
class Enumerator {
   public:
    Enumerator(const Form& Q, int k, const RepsetOptions& opts) : red_(reduce(Q)), k_(k), opts_(opts) {
        const Field& F = Q.field();
        n_ = Q.rank();
        q_ = F.q();
        bounds_ = coordinate_bounds(successive_minima(red_.form), k);
        total_ = 1;
        for (int b : bounds_) {
            const std::uint64_t c = box_size(b);
            if (c == 0 || total_ > opts.budget / c)
                throw BudgetExceeded("representation enumeration exceeds budget of " + std::to_string(opts.budget) +
                                     " vectors");
            total_ *= c;
        }
        // Codes of values need q^(k+1) to fit comfortably in 64 bits.
        long double span = 1;
        for (int i = 0; i <= std::max(k, 0); ++i) span *= q_;
        code_fits_ = span < 4e18L;
        fast_ = F.is_prime_field() && q_ < (1u << 20) && code_fits_;
        if (code_fits_) {
            code_space_ = 1;
            for (int i = 0; i <= std::max(k, 0); ++i) code_space_ *= q_;
        }
        int len = k_ + 1;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (bounds_[i] >= 0 && bounds_[j] >= 0 && !red_.form(i, j).is_zero())
                    len = std::max(len, red_.form(i, j).degree() + bounds_[i] + bounds_[j] + 1);
        len_ = len;
    }

    std::uint64_t box_size(int b) const {
        std::uint64_t c = 1;
        for (int i = 0; i <= b; ++i) {
            if (c > std::numeric_limits<std::uint64_t>::max() / q_) return 0;
            c *= q_;
        }
        return c;
    }

    bool fast() const { return fast_; }
    bool code_fits() const { return code_fits_; }
    std::uint64_t code_space() const { return code_space_; }
    std::uint64_t first_count() const { return box_size(bounds_[0]); }
    const Reduction& reduction() const { return red_; }
    int rank() const { return n_; }

    // visit(code, coordinate codes) -> continue?
    template <class Visit>
    bool run_fast(std::uint64_t first_begin, std::uint64_t first_end, Visit&& visit) const {
        const Field& F = red_.form.field();
        const std::int64_t p = q_;
        std::vector<Coeffs> m(static_cast<std::size_t>(n_ * n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                Coeffs c(static_cast<std::size_t>(len_), 0);
                const Poly& e = red_.form(i, j);
                // Entries beyond len_ only ever meet pinned-zero coordinates.
                for (int d = 0; d <= std::min(e.degree(), len_ - 1); ++d) c[static_cast<std::size_t>(d)] = e.coeff(d);
                m[static_cast<std::size_t>(i * n_ + j)] = std::move(c);
            }
        (void)F;
        auto digits = [&](std::uint64_t code, int b, std::vector<std::int64_t>& out) {
            out.assign(static_cast<std::size_t>(b + 1), 0);
            for (int d = 0; d <= b; ++d, code /= q_) out[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(code % q_);
        };
        // acc += s * a * x where a has degree < len and x has b+1 digits.
        auto mul_add = [&](Coeffs& acc, const Coeffs& a, const std::vector<std::int64_t>& x, std::int64_t s) {
            for (std::size_t d = 0; d < x.size(); ++d) {
                if (x[d] == 0) continue;
                const std::int64_t xs = x[d] * s;
                for (std::size_t e = 0; e + d < acc.size(); ++e)
                    if (a[e]) acc[e + d] += a[e] * xs;
            }
        };
        auto reduce_mod = [&](Coeffs& c) {
            for (auto& v : c) {
                v %= p;
                if (v < 0) v += p;
            }
        };

        // Innermost level table of m_nn * x^2.
        const int last = n_ - 1;
        const std::uint64_t last_count = box_size(bounds_[last]);
        std::vector<Coeffs> last_sq;
        std::vector<std::vector<std::int64_t>> last_digits(last_count);
        for (std::uint64_t c = 0; c < last_count; ++c) digits(c, bounds_[last], last_digits[c]);
        const bool table = last_count * static_cast<std::uint64_t>(len_) <= 20'000'000;
        auto square_term = [&](int i, const std::vector<std::int64_t>& x, Coeffs& out) {
            std::vector<std::int64_t> x2(x.size() * 2, 0);
            for (std::size_t a = 0; a < x.size(); ++a)
                for (std::size_t b = 0; b < x.size(); ++b) x2[a + b] += x[a] * x[b];
            for (auto& v : x2) v %= p;
            out.assign(static_cast<std::size_t>(len_), 0);
            mul_add(out, m[static_cast<std::size_t>(i * n_ + i)], x2, 1);
        };
        if (table) {
            last_sq.resize(last_count);
            for (std::uint64_t c = 0; c < last_count; ++c) {
                square_term(last, last_digits[c], last_sq[c]);
                reduce_mod(last_sq[c]);
            }
        }

        // Level state: partial value P and linear forms L_j = sum_{l<i} m_lj x_l.
        std::vector<Coeffs> P(static_cast<std::size_t>(n_ + 1), Coeffs(static_cast<std::size_t>(len_), 0));
        std::vector<std::vector<Coeffs>> L(static_cast<std::size_t>(n_ + 1),
                                           std::vector<Coeffs>(static_cast<std::size_t>(n_), Coeffs(static_cast<std::size_t>(len_), 0)));
        std::vector<std::uint64_t> coords(static_cast<std::size_t>(n_), 0);
        std::vector<std::int64_t> x;
        Coeffs tmp, val(static_cast<std::size_t>(len_));

        std::function<bool(int)> level = [&](int i) -> bool {
            const std::uint64_t count = box_size(bounds_[i]);
            const std::uint64_t begin = i == 0 ? first_begin : 0;
            const std::uint64_t end = i == 0 ? std::min(first_end, count) : count;
            if (i == last) {
                const Coeffs& Pi = P[static_cast<std::size_t>(i)];
                const Coeffs& Li = L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
                for (std::uint64_t c = begin; c < end; ++c) {
                    const auto& xd = last_digits[c];
                    val = Pi;
                    mul_add(val, Li, xd, 2);
                    if (table) {
                        const Coeffs& s = last_sq[c];
                        for (int d = 0; d < len_; ++d) val[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d)];
                    } else {
                        square_term(i, xd, tmp);
                        for (int d = 0; d < len_; ++d) val[static_cast<std::size_t>(d)] += tmp[static_cast<std::size_t>(d)];
                    }
                    bool high = false;
                    std::uint64_t code = 0;
                    for (int d = len_ - 1; d >= 0; --d) {
                        std::int64_t v = val[static_cast<std::size_t>(d)] % p;
                        if (v < 0) v += p;
                        if (d > k_) {
                            if (v) { high = true; break; }
                            continue;
                        }
                        code = code * q_ + static_cast<std::uint64_t>(v);
                    }
                    if (high) continue;
                    coords[static_cast<std::size_t>(i)] = c;
                    if (!visit(code, coords)) return false;
                }
                return true;
            }
            for (std::uint64_t c = begin; c < end; ++c) {
                digits(c, bounds_[i], x);
                coords[static_cast<std::size_t>(i)] = c;
                Coeffs& Pn = P[static_cast<std::size_t>(i + 1)];
                Pn = P[static_cast<std::size_t>(i)];
                mul_add(Pn, L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], x, 2);
                square_term(i, x, tmp);
                for (int d = 0; d < len_; ++d) Pn[static_cast<std::size_t>(d)] += tmp[static_cast<std::size_t>(d)];
                reduce_mod(Pn);
                for (int j = i + 1; j < n_; ++j) {
                    Coeffs& Lj = L[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)];
                    Lj = L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    mul_add(Lj, m[static_cast<std::size_t>(i * n_ + j)], x, 1);
                    reduce_mod(Lj);
                }
                if (!level(i + 1)) return false;
            }
            return true;
        };
        return level(0);
    }

    // visit(value, coordinates) -> continue?
    template <class Visit>
    void run_slow(Visit&& visit) const {
        const Field& F = red_.form.field();
        std::vector<std::vector<Poly>> choices(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            const std::uint64_t c = box_size(bounds_[i]);
            for (std::uint64_t code = 0; code < c; ++code) choices[static_cast<std::size_t>(i)].push_back(Poly::from_code(F, code));
        }
        std::vector<Poly> x(static_cast<std::size_t>(n_), Poly(F));
        std::function<bool(int)> rec = [&](int i) -> bool {
            if (i == n_) {
                Poly v = red_.form.evaluate(x);
                if (v.degree() > k_) return true;
                return visit(v, x);
            }
            for (const auto& c : choices[static_cast<std::size_t>(i)]) {
                x[static_cast<std::size_t>(i)] = c;
                if (!rec(i + 1)) return false;
            }
            return true;
        };
        rec(0);
    }

    std::vector<Poly> lift(const std::vector<std::uint64_t>& coords) const {
        const Field& F = red_.form.field();
        std::vector<Poly> x;
        for (auto c : coords) x.push_back(Poly::from_code(F, c));
        return lift(x);
    }

    // Coordinates for the reduced form back to coordinates for Q.
    std::vector<Poly> lift(const std::vector<Poly>& x) const {
        const Field& F = red_.form.field();
        std::vector<Poly> y(static_cast<std::size_t>(n_), Poly(F));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) y[static_cast<std::size_t>(i)] += red_.transform.matrix(i, j) * x[static_cast<std::size_t>(j)];
        return y;
    }

   private:
    Reduction red_;
    int k_;
    RepsetOptions opts_;
    int n_ = 0;
    std::uint32_t q_ = 0;
    std::vector<int> bounds_;
    std::uint64_t total_ = 0;
    bool code_fits_ = false;
    bool fast_ = false;
    std::uint64_t code_space_ = 0;
    int len_ = 0;
};

// Runs the fast enumerator over the first coordinate split into chunks, one
// sink per job; the merge is independent of the split.
template <class Sink, class MakeSink>
std::vector<Sink> run_parallel(const Enumerator& e, int jobs, MakeSink make) {
    const std::uint64_t first = e.first_count();
    const int width = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::max(jobs, 1), first)));
    std::vector<Sink> sinks;
    for (int j = 0; j < width; ++j) sinks.push_back(make());
    auto work = [&](int j) {
        const std::uint64_t b = first * static_cast<std::uint64_t>(j) / static_cast<std::uint64_t>(width);
        const std::uint64_t en = first * static_cast<std::uint64_t>(j + 1) / static_cast<std::uint64_t>(width);
        Sink& s = sinks[static_cast<std::size_t>(j)];
        e.run_fast(b, en, [&](std::uint64_t code, const std::vector<std::uint64_t>&) {
            s.add(code);
            return true;
        });
    };
    if (width == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < width; ++j) threads.emplace_back(work, j);
        for (auto& t : threads) t.join();
    }
    return sinks;
}

struct CodeSet {
    bool dense;
    std::vector<std::uint64_t> bits;
    std::unordered_set<std::uint64_t> sparse;

    explicit CodeSet(std::uint64_t space) : dense(space <= (1ull << 27)) {
        if (dense) bits.assign(static_cast<std::size_t>((space + 63) / 64), 0);
    }
    void add(std::uint64_t c) {
        if (dense)
            bits[c >> 6] |= 1ull << (c & 63);
        else
            sparse.insert(c);
    }
};

struct CodeCounts {
    bool dense;
    std::vector<std::uint32_t> cnt;
    std::unordered_map<std::uint64_t, std::uint64_t> sparse;

    explicit CodeCounts(std::uint64_t space) : dense(space <= (1ull << 22)) {
        if (dense) cnt.assign(static_cast<std::size_t>(space), 0);
    }
    void add(std::uint64_t c) {
        if (dense)
            ++cnt[c];
        else
            ++sparse[c];
    }
};

std::vector<std::uint64_t> collect_codes(const Enumerator& e, int jobs) {
    auto sinks = run_parallel<CodeSet>(e, jobs, [&] { return CodeSet(e.code_space()); });
    std::vector<std::uint64_t> out;
    if (sinks.front().dense) {
        auto& bits = sinks.front().bits;
        for (std::size_t j = 1; j < sinks.size(); ++j)
            for (std::size_t w = 0; w < bits.size(); ++w) bits[w] |= sinks[j].bits[w];
        for (std::size_t w = 0; w < bits.size(); ++w)
            for (std::uint64_t word = bits[w]; word; word &= word - 1)
                out.push_back(w * 64 + static_cast<std::uint64_t>(__builtin_ctzll(word)));
    } else {
        std::unordered_set<std::uint64_t> all;
        for (auto& s : sinks) all.insert(s.sparse.begin(), s.sparse.end());
        out.assign(all.begin(), all.end());
        std::sort(out.begin(), out.end());
    }
    return out;
}

std::map<Poly, std::uint64_t> collect_counts(const Enumerator& e, const Field& F, int jobs) {
    std::map<Poly, std::uint64_t> out;
    if (!e.fast()) {
        e.run_slow([&](const Poly& v, const std::vector<Poly>&) {
            ++out[v];
            return true;
        });
        return out;
    }
    auto sinks = run_parallel<CodeCounts>(e, jobs, [&] { return CodeCounts(e.code_space()); });
    if (sinks.front().dense) {
        auto& cnt = sinks.front().cnt;
        for (std::size_t j = 1; j < sinks.size(); ++j)
            for (std::size_t c = 0; c < cnt.size(); ++c) cnt[c] += sinks[j].cnt[c];
        for (std::size_t c = 0; c < cnt.size(); ++c)
            if (cnt[c]) out.emplace(Poly::from_code(F, c), cnt[c]);
    } else {
        std::map<std::uint64_t, std::uint64_t> merged;
        for (auto& s : sinks)
            for (auto [c, n] : s.sparse) merged[c] += n;
        for (auto [c, n] : merged) out.emplace(Poly::from_code(F, c), n);
    }
    return out;
}

std::vector<Poly> collect_values(const Enumerator& e, const Field& F, int jobs) {
    std::vector<Poly> out;
    if (e.fast()) {
        for (auto c : collect_codes(e, jobs)) out.push_back(Poly::from_code(F, c));
        return out;
    }
    std::set<Poly> vals;
    e.run_slow([&](const Poly& v, const std::vector<Poly>&) {
        vals.insert(v);
        return true;
    });
    return {vals.begin(), vals.end()};
}

}  // namespace

bool RepSet::contains(const Poly& f) const { return std::binary_search(values.begin(), values.end(), f); }

std::vector<int> coordinate_bounds(const MinimaSeq& mu, int k) {
    std::vector<int> b;
    for (int m : mu.degrees) b.push_back(k < m ? -1 : (k - m) / 2);
    return b;
}

RepSet repset_upto(const Form& Q, int k, const RepsetOptions& opts) {
    RepSet r;
    r.k = k;
    if (k < 0) {
        reduce(Q);
        r.values.push_back(Poly(Q.field()));
        return r;
    }
    const Enumerator e(Q, k, opts);
    r.values = collect_values(e, Q.field(), opts.jobs);
    return r;
}

std::map<Poly, std::uint64_t> rep_numbers(const Form& Q, int k, const RepsetOptions& opts) {
    if (k < 0) {
        reduce(Q);
        return {{Poly(Q.field()), 1}};
    }
    const Enumerator e(Q, k, opts);
    return collect_counts(e, Q.field(), opts.jobs);
}

std::vector<std::uint64_t> repset_codes(const Form& Q, int k, const RepsetOptions& opts) {
    if (k < 0) {
        reduce(Q);
        return {0};
    }
    const Enumerator e(Q, k, opts);
    if (e.fast()) return collect_codes(e, opts.jobs);
    if (!e.code_fits()) throw CapabilityError("representation codes overflow 64 bits at this degree");
    std::vector<std::uint64_t> out;
    for (const auto& v : collect_values(e, Q.field(), opts.jobs)) out.push_back(v.code());
    std::sort(out.begin(), out.end());
    return out;
}

Representation represents(const Form& Q, const Poly& f, const RepsetOptions& opts) {
    const Field& F = Q.field();
    Representation r;
    if (f.is_zero()) {
        reduce(Q);
        r.represented = true;
        r.witness.assign(static_cast<std::size_t>(Q.rank()), Poly(F));
        return r;
    }
    const Enumerator e(Q, f.degree(), opts);
    if (e.fast()) {
        const std::uint64_t target = f.code();
        e.run_fast(0, e.first_count(), [&](std::uint64_t code, const std::vector<std::uint64_t>& coords) {
            if (code != target) return true;
            r.represented = true;
            r.witness = e.lift(coords);
            return false;
        });
    } else {
        e.run_slow([&](const Poly& v, const std::vector<Poly>& x) {
            if (v != f) return true;
            r.represented = true;
            r.witness = e.lift(x);
            return false;
        });
    }
    return r;
}

bool sets_equal_upto(const Form& Q, const Form& Q2, int k, const RepsetOptions& opts) {
    return !first_difference(Q, Q2, k, opts).has_value();
}

std::optional<Poly> first_difference(const Form& Q, const Form& Q2, int k, const RepsetOptions& opts) {
    if (&Q.field() != &Q2.field()) throw DomainError("forms over different fields");
    const auto a = repset_upto(Q, k, opts).values;
    const auto b = repset_upto(Q2, k, opts).values;
    std::vector<Poly> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    if (diff.empty()) return std::nullopt;
    return diff.front();
}

std::optional<int> distinguishing_degree(const Form& Q, const Form& Q2, const RepsetOptions& opts) {
    const int m = std::max(discriminant(Q).degree(), discriminant(Q2).degree());
    const int top = 3 * m - 2;
    if (top < 0) return std::nullopt;
    // Canonical order is degree first, so the least differing value has the least degree.
    const auto d = first_difference(Q, Q2, top, opts);
    if (!d) return std::nullopt;
    return std::max(d->degree(), 0);
}

}  // namespace ffqf
