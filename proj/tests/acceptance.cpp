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
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffqf/classify.hpp"
#include "ffqf/localgenus.hpp"
#include "ffqf/picard.hpp"
#include "ffqf/repset.hpp"
#include "ffqf/verify.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ffqf;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "failed: " << what;
        }
    }
    void note(const std::string& s) { detail << (detail.tellp() > 0 ? "; " : "") << s; }
};

std::uint64_t count_theorem(const Report& r, const std::string& theorem) {
    std::uint64_t n = 0;
    for (const auto& v : r.violations) n += v.theorem == theorem;
    return n;
}

SweepConfig config(std::uint32_t q, int max_degree, std::uint64_t samples = 0) {
    SweepConfig c;
    c.q = q;
    c.max_disc_degree = max_degree;
    c.samples = samples;
    c.max_listed = 1'000'000;
    return c;
}

Form random_definite_binary(const Field& F, int max_disc_deg, std::mt19937_64& rng) {
    while (true) {
        const Poly a = testing::random_nonzero_poly(F, 2, rng), b = testing::random_poly(F, 2, rng),
                   c = testing::random_nonzero_poly(F, 3, rng);
        const Poly d = b * b - a * c;
        if (d.is_zero() || d.degree() > max_disc_deg || !is_definite_discriminant(d)) continue;
        return Form::binary(a, b, c);
    }
}

void criterion1(Outcome& o) {
    const Field& F = Field::prime(13);
    const Poly t = Poly::t(F);
    const Form Q = Form::binary(t - Poly::constant(F, 5), Poly::constant(F, 4), -parse_poly(F, "t^2+5*t+11"));
    o.require(is_reduced(Q) && is_definite(Q) && is_primitive(Q), "reduced, definite, primitive");
    o.require(discriminant(Q) == parse_poly(F, "t^3-t"), "disc = t^3-t");
    const int h = class_number(Q);
    o.require(h == 1, "h(Q) = 1");
    const ClassTable T = class_table(parse_poly(F, "t^3-t"), true);
    o.require(T.proper_classes.size() == 16, "16 proper classes");
    const PicGroup G = pic_group(parse_poly(F, "t^3-t"));
    o.require(G.order == 8 && G.structure.to_string() == "(2,4)", "Pic order 8, structure (2,4)");
    const MumfordDivisor P{parse_poly(F, "t-5"), Poly::constant(F, 4)};
    const auto ord = element_order(parse_poly(F, "t^3-t"), P, G.order);
    o.require(ord == 4, "(t-5, 4) has order 4");
    const auto cs = comp_sequence_check(parse_poly(F, "t^3-t"));
    o.require(cs.pass && cs.proper_classes == 16 && cs.pic_order == 8 && cs.kernel_order == 2, "16 = 2*8");
    o.note("h=" + std::to_string(h) + ", proper classes " + std::to_string(T.proper_classes.size()) + ", Pic " +
           G.structure.to_string() + ", ord P=" + std::to_string(ord));
}

void criterion2(Outcome& o) {
    for (auto [q, m] : {std::pair{5u, 3}, std::pair{7u, 2}}) {
        const Report r = verify_equiv_theorems(config(q, m));
        const auto bad = r.stats["bounded_degree_violations"].get<std::uint64_t>();
        o.require(bad == 0 && r.mode == "strict", "q=" + std::to_string(q) + " bounded-degree equivalence");
        o.note("q=" + std::to_string(q) + " deg<=" + std::to_string(m) + ": " + std::to_string(r.stats["classes"].get<std::uint64_t>()) +
               " classes, " + std::to_string(r.instances_checked) + " pairs, " + std::to_string(bad) + " violations");
    }
}

void criterion3(Outcome& o) {
    for (std::uint32_t q : {5u, 7u}) {
        const Report r = verify_equiv_theorems(config(q, 3));
        const auto pairs = r.stats["same_disc_same_minima_pairs"].get<std::uint64_t>();
        const auto bad = r.stats["equal_minima_violations"].get<std::uint64_t>();
        o.require(bad == 0 && pairs > 0, "q=" + std::to_string(q) + " equal-minima equivalence");
        o.note("q=" + std::to_string(q) + ": " + std::to_string(pairs) + " same-disc same-minima pairs, " +
               std::to_string(bad) + " violations");
    }
}

void criterion4(Outcome& o) {
    const Report r = verify_disc_recovery(config(5, 3));
    o.require(r.passed() && r.instances_checked > 0, "disc recovery");
    o.note(std::to_string(r.instances_checked) + " distinct-disc pairs, " + std::to_string(r.violation_count) + " violations");
}

void criterion5(Outcome& o) {
    const Report r = verify_minima_recovery(config(5, 3));
    o.require(r.passed(), "minima recovery");
    o.note(std::to_string(r.instances_checked) + " pairs, " + std::to_string(r.violation_count) + " violations");
}

void criterion6(Outcome& o) {
    const Report r = ternary_family_check(config(5, 6));
    const auto sets = count_theorem(r, "ternary-equal-sets");
    o.require(sets == 0, "V_6(Q_a) equal for all a and disc classes differ when a^2 != b^2");
    const auto literal = r.stats["mismatches_local_at_t"].get<std::uint64_t>();
    const auto corrected = r.stats["mismatches_with_infinite_place"].get<std::uint64_t>();
    o.require(literal == 0, "global <=> local at t, deg f <= 4 (" + std::to_string(literal) + " mismatches)");
    o.note("equal-set pairs ok: " + std::string(sets == 0 ? "yes" : "no") + ", with the infinite place added: " +
           std::to_string(corrected) + " mismatches");
}

void criterion7(Outcome& o) {
    const Report r = cn1_survey(config(17, 2, 200));
    o.require(r.mode == "strict" && r.passed(), "q=17 class-number-one survey");
    o.require(r.stats["sampled_degree3_discriminants"] == 200, "200 degree-3 discriminants");
    o.require(r.stats["q13_example"]["h"] == 1, "q=13 example has h=1");
    o.note(std::to_string(r.stats["classes_exhaustive"].get<std::uint64_t>()) + " classes with deg D <= 2, " +
           std::to_string(r.stats["sampled_degree3_classes"].get<std::uint64_t>()) + " sampled degree-3 classes, " +
           std::to_string(r.violation_count) + " violations");
}

void criterion8(Outcome& o) {
    for (std::uint32_t q : {5u, 13u, 17u}) {
        const Report r = smooth_discriminant_identity(config(q, 0, 1000));
        o.require(r.passed() && r.instances_checked == 1000, "q=" + std::to_string(q));
        o.note("q=" + std::to_string(q) + ": " + std::to_string(r.violation_count) + " mismatches, constant " +
               r.stats["proportionality_constants"].dump());
    }
}

void criterion9(Outcome& o) {
    for (std::uint32_t q : {7u, 13u}) {
        const Report r = quadric_audit(config(q, 0, 200));
        o.require(r.passed(), "q=" + std::to_string(q));
        o.note("q=" + std::to_string(q) + ": smooth counts in [" + r.stats["smooth_points_min"].dump() + ", " +
               r.stats["smooth_points_max"].dump() + "]");
    }
}

void criterion10(Outcome& o) {
    std::mt19937_64 rng(10);
    // Hilbert reciprocity
    int bad = 0;
    for (std::uint32_t p : {5u, 13u}) {
        const Field& F = Field::prime(p);
        for (int i = 0; i < 1000; ++i) {
            const Poly f = testing::random_nonzero_poly(F, 4, rng), g = testing::random_nonzero_poly(F, 4, rng);
            int s = 1;
            for (const auto& v : relevant_places(f, g)) s *= hilbert_symbol(f, g, v);
            bad += s != 1;
        }
    }
    o.require(bad == 0, "Hilbert reciprocity");

    // degree formula
    bad = 0;
    for (std::uint32_t p : {5u, 13u}) {
        const Field& F = Field::prime(p);
        for (int i = 0; i < 50; ++i) {
            const Form R = reduce(random_definite_binary(F, 4, rng)).form;
            const MinimaSeq mu = successive_minima(R);
            for (int j = 0; j < 100; ++j) {
                const Poly x = testing::random_poly(F, 3, rng), y = testing::random_poly(F, 3, rng);
                if (x.is_zero() && y.is_zero()) continue;
                const Poly v[2] = {x, y};
                const int expect = std::max(x.is_zero() ? kMinusInfinity : 2 * x.degree() + mu[0],
                                            y.is_zero() ? kMinusInfinity : 2 * y.degree() + mu[1]);
                bad += R.evaluate(v).degree() != expect;
            }
        }
    }
    o.require(bad == 0, "degree formula on 10^4 evaluations");

    // repset against a naive enumeration over inflated boxes
    bad = 0;
    {
        const Field& F = Field::prime(5);
        for (int i = 0; i < 60; ++i) {
            const Form Q = random_definite_binary(F, 3, rng);
            const Form R = reduce(Q).form;
            const auto naive = testing::naive_values(R, testing::inflate(coordinate_bounds(successive_minima(R), 4), 2), 4);
            for (int k = 0; k <= 4; ++k) {
                std::set<Poly> cut;
                for (const auto& f : naive)
                    if (f.degree() <= k) cut.insert(f);
                const auto got = repset_upto(Q, k).values;
                bad += std::set<Poly>(got.begin(), got.end()) != cut;
            }
        }
        for (Field::Elem a = 1; a < 5; ++a) {
            const Form Q = testing::ternary_family(F, a);
            const MinimaSeq mu = successive_minima(Q);
            for (int k = 0; k <= 4; ++k) {
                const auto naive = testing::naive_values(Q, testing::inflate(coordinate_bounds(mu, k), k <= 1 ? 2 : 1), k);
                const auto got = repset_upto(Q, k).values;
                bad += std::set<Poly>(got.begin(), got.end()) != naive;
            }
        }
    }
    o.require(bad == 0, "repset oracle completeness");

    // reduction
    bad = 0;
    for (std::uint32_t p : {5u, 7u, 13u}) {
        const Field& F = Field::prime(p);
        for (int i = 0; i < 300; ++i) {
            const Form Q = random_definite_binary(F, 4, rng).transformed(testing::random_gl(F, 2, 2, rng));
            const Reduction r = reduce(Q);
            bad += !(Q.transformed(r.transform.matrix) == r.form) || !is_reduced(r.form) ||
                   !(reduce(r.form).form == r.form) || !r.transform.matrix.determinant().is_constant();
        }
    }
    o.require(bad == 0, "reduce transport and idempotence");

    // class tables
    std::uint64_t tables = 0, hplus = 0, sizes = 0;
    auto audit = [&](const ClassTable& T) {
        ++tables;
        std::set<int> proper_sizes;
        for (std::size_t g = 0; g < T.genera.size(); ++g) {
            const int hp = T.proper_count_in_genus(static_cast<int>(g));
            const int h = static_cast<int>(T.genera[g].size());
            hplus += hp > 2 * h;
            proper_sizes.insert(hp);
        }
        sizes += proper_sizes.size() > 1;
    };
    for (auto [p, m] : {std::pair{5u, 3}, std::pair{7u, 3}, std::pair{13u, 2}})
        for (const Poly& D : definite_discriminants(Field::prime(p), m)) audit(class_table(D, true));
    audit(class_table(parse_poly(Field::prime(13), "t^3-t"), true));
    o.require(hplus == 0, "h+ <= 2h");
    o.require(sizes == 0, "genera of equal size (" + std::to_string(sizes) + " tables differ)");
    o.note(std::to_string(tables) + " class tables audited");
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"F_13 class-number-one example", criterion1},
        {"bounded-degree equivalence sweep", criterion2},
        {"equal-minima equivalence sweep", criterion3},
        {"discriminant recovery sweep", criterion4},
        {"minima recovery sweep", criterion5},
        {"ternary counterexample", criterion6},
        {"class-number-one classification", criterion7},
        {"smoothness identity", criterion8},
        {"quadric curve audit", criterion9},
        {"property suites", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && !only.count(id)) continue;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", secs);
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << criteria[i].first << ", "
                  << buf << "] " << o.detail.str() << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
