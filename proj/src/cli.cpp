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

#include "ffqf/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "ffqf/classify.hpp"
#include "ffqf/equivalence.hpp"
#include "ffqf/error.hpp"
#include "ffqf/localgenus.hpp"
#include "ffqf/picard.hpp"
#include "ffqf/repset.hpp"
#include "ffqf/verify.hpp"
#include "json.hpp"

namespace ffqf::cli {

using nlohmann::json;

namespace {

struct Options {
    std::uint32_t q = 0;
    std::uint32_t delta = 0;
    std::vector<std::string> forms;
    std::string disc;
    std::optional<int> max_degree;
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string format = "json";
    std::uint64_t budget = RepsetOptions{}.budget;
    bool counts = false;
    bool primitive = false;
    std::string f, g, place = "inf";
    std::string d0, conductor;
    std::string sweep;
};

const Field& field_of(const Options& o) { return o.delta ? Field::prime(o.q, o.delta) : Field::prime(o.q); }

const std::string& form_arg(const Options& o, std::size_t i) {
    if (o.forms.size() <= i) throw CLI::ValidationError("--form", "expected " + std::to_string(i + 1) + " form literal(s)");
    return o.forms[i];
}

json matrix_json(const PolyMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

void print_matrix(std::ostream& out, const PolyMatrix& m) {
    for (int i = 0; i < m.size(); ++i) {
        out << "[";
        for (int j = 0; j < m.size(); ++j) out << (j ? ", " : "") << m(i, j).to_string();
        out << "]\n";
    }
}

json symbol_json(const GenusSymbol& s) {
    json finite = json::array();
    for (const auto& [p, ji] : s.finite_data) {
        json blocks = json::array();
        for (const auto& b : ji.blocks) blocks.push_back({b.scale, b.rank, b.unit_det_char});
        finite.push_back({{"p", p.to_string()}, {"blocks", blocks}});
    }
    return {{"disc", s.disc.to_string()},
            {"disc_class", s.disc_class.representative.to_string()},
            {"finite", finite},
            {"infinity",
             {{"disc_degree_parity", s.infinity_data.disc_degree_parity},
              {"disc_lead_char", s.infinity_data.disc_lead_char},
              {"hasse", s.infinity_data.hasse}}}};
}

RepsetOptions repset_options(const Options& o) {
    RepsetOptions r;
    r.budget = o.budget;
    r.jobs = o.jobs;
    return r;
}

int cmd_reduce(const Options& o, std::ostream& out) {
    const Form Q = parse_form(field_of(o), form_arg(o, 0));
    const Reduction r = reduce(Q);
    if (o.format == "json") {
        out << json{{"form", r.form.to_string()}, {"transform", matrix_json(r.transform.matrix)}}.dump() << "\n";
    } else {
        out << r.form.to_string() << "\n";
        print_matrix(out, r.transform.matrix);
    }
    return 0;
}

int cmd_disc(const Options& o, std::ostream& out) {
    const Form Q = parse_form(field_of(o), form_arg(o, 0));
    const Poly d = discriminant(Q);
    if (o.format == "json")
        out << json{{"disc", d.to_string()},
                    {"disc_class", disc_class(Q).representative.to_string()},
                    {"definite", is_definite(Q)},
                    {"primitive", is_primitive(Q)}}
                   .dump()
            << "\n";
    else
        out << d.to_string() << "\n";
    return 0;
}

int cmd_minima(const Options& o, std::ostream& out) {
    const Form Q = parse_form(field_of(o), form_arg(o, 0));
    const MinimaSeq mu = successive_minima(Q);
    if (o.format == "json") {
        out << json(mu.degrees).dump() << "\n";
    } else {
        for (std::size_t i = 0; i < mu.degrees.size(); ++i) out << (i ? " " : "") << mu.degrees[i];
        out << "\n";
    }
    return 0;
}

int cmd_repset(const Options& o, std::ostream& out) {
    const Form Q = parse_form(field_of(o), form_arg(o, 0));
    if (!o.max_degree) throw CLI::ValidationError("--max-degree", "required for repset");
    const int k = *o.max_degree;
    if (o.counts) {
        const auto counts = rep_numbers(Q, k, repset_options(o));
        if (o.format == "json") {
            json arr = json::array();
            for (const auto& [f, n] : counts) arr.push_back({{"value", f.to_string()}, {"count", n}});
            out << arr.dump() << "\n";
        } else {
            for (const auto& [f, n] : counts) out << f.to_string() << '\t' << n << "\n";
        }
        return 0;
    }
    const RepSet r = repset_upto(Q, k, repset_options(o));
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& f : r.values) arr.push_back(f.to_string());
        out << arr.dump() << "\n";
    } else {
        for (const auto& f : r.values) out << f.to_string() << "\n";
    }
    return 0;
}

int cmd_equal(const Options& o, std::ostream& out, bool proper) {
    const Field& F = field_of(o);
    const Form Q = parse_form(F, form_arg(o, 0)), Q2 = parse_form(F, form_arg(o, 1));
    const auto t = proper ? properly_equivalent(Q, Q2) : equivalent(Q, Q2);
    json j = {{proper ? "properly_equivalent" : "equivalent", t.has_value()},
              {"transform", t ? matrix_json(t->matrix) : json(nullptr)}};
    if (o.max_degree) j["sets_equal"] = sets_equal_upto(Q, Q2, *o.max_degree, repset_options(o));
    if (o.format == "json") {
        out << j.dump() << "\n";
    } else {
        out << (t ? "true" : "false") << "\n";
        if (t) print_matrix(out, t->matrix);
    }
    return 0;
}

int cmd_genus(const Options& o, std::ostream& out) {
    const Field& F = field_of(o);
    const Form Q = parse_form(F, form_arg(o, 0)), Q2 = parse_form(F, form_arg(o, 1));
    const bool same = same_genus(Q, Q2);
    if (o.format == "json")
        out << json{{"same_genus", same}, {"symbols", {symbol_json(genus_symbol(Q)), symbol_json(genus_symbol(Q2))}}}.dump()
            << "\n";
    else
        out << (same ? "true" : "false") << "\n"
            << genus_symbol(Q).to_string() << "\n"
            << genus_symbol(Q2).to_string() << "\n";
    return 0;
}

int cmd_symbol(const Options& o, std::ostream& out) {
    const Field& F = field_of(o);
    const Poly f = parse_poly(F, o.f), g = parse_poly(F, o.g);
    const Place v = o.place == "inf" ? Place::infinity(F) : Place::finite(parse_poly(F, o.place));
    out << hilbert_symbol(f, g, v) << "\n";
    return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const Poly D = parse_poly(field_of(o), o.disc);
    const ClassTable t = class_table(D, o.primitive);
    if (o.format != "json") {
        for (std::size_t c = 0; c < t.classes.size(); ++c) {
            const int ci = static_cast<int>(c);
            out << c << '\t' << t.representative(ci).to_string() << '\t' << t.genus_of_class[c] << '\t'
                << t.class_number_of_class(ci) << "\n";
        }
        return 0;
    }
    json forms = json::array(), symbols = json::array(), h = json::array();
    for (const auto& f : t.forms) forms.push_back(f.to_string());
    for (const auto& s : t.genus_symbols) symbols.push_back(symbol_json(s));
    for (std::size_t c = 0; c < t.classes.size(); ++c) h.push_back(t.class_number_of_class(static_cast<int>(c)));
    out << json{{"disc", D.to_string()},
                {"primitive_only", t.primitive_only},
                {"forms", forms},
                {"proper_classes", t.proper_classes},
                {"classes", t.classes},
                {"class_of_proper", t.class_of_proper},
                {"genera", t.genera},
                {"class_numbers", h},
                {"genus_symbols", symbols}}
               .dump()
        << "\n";
    return 0;
}

int cmd_classnumber(const Options& o, std::ostream& out) {
    const Form Q = parse_form(field_of(o), form_arg(o, 0));
    out << class_number(Q) << "\n";
    return 0;
}

int cmd_picard(const Options& o, std::ostream& out) {
    const Field& F = field_of(o);
    const Poly D0 = parse_poly(F, o.d0);
    json j = {{"d0", D0.to_string()}};
    if (!o.conductor.empty()) {
        const Poly f = parse_poly(F, o.conductor);
        j["conductor"] = f.to_string();
        j["order"] = pic_order_with_conductor(D0, f);
        j["order_maximal"] = pic_order_maximal(D0);
    } else if (D0.degree() % 2 == 1) {
        const PicGroup G = pic_group(D0);
        json gens = json::array();
        for (const auto& g : generating_set(D0, G)) gens.push_back(g.to_string());
        j["genus"] = curve_genus(D0);
        j["order"] = G.order;
        j["structure"] = G.structure.to_string();
        j["invariants"] = G.structure.invariants;
        j["generators"] = gens;
    } else {
        j["order"] = pic_order_maximal(D0);
    }
    if (o.format == "json") {
        out << j.dump() << "\n";
    } else {
        out << j["order"].get<std::uint64_t>();
        if (j.contains("structure")) out << '\t' << j["structure"].get<std::string>();
        out << "\n";
    }
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    SweepConfig cfg;
    cfg.q = o.q;
    cfg.delta = o.delta;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.budget = o.budget;
    if (o.max_degree) {
        cfg.max_disc_degree = *o.max_degree;
    } else {
        cfg.max_disc_degree = o.sweep == "ternary" ? 6 : o.sweep == "cn1" ? 2 : 3;
    }
    const Report r = run_sweep(o.sweep, cfg);
    if (o.format == "tsv")
        out << r.to_tsv();
    else
        out << r.to_json().dump(2) << "\n";
    return r.passed() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Definite binary quadratic forms over F_q[t]", "ffqf"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--q", o.q, "odd prime field order")->required()->check(CLI::PositiveNumber);
    app.add_option("--delta", o.delta, "non-square of F_q (default: least non-square)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "tsv", "text"}));
    app.add_option("--budget", o.budget, "cap on enumerated coordinate vectors");
    app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* reduce_c = app.add_subcommand("reduce", "reduce a form; print the form and the transformation");
    auto* disc_c = app.add_subcommand("disc", "discriminant of a form");
    auto* minima_c = app.add_subcommand("minima", "successive minima");
    auto* repset_c = app.add_subcommand("repset", "represented polynomials up to a degree");
    auto* equal_c = app.add_subcommand("equal", "test equivalence of two forms");
    auto* pequal_c = app.add_subcommand("proper-equal", "test proper equivalence of two forms");
    auto* genus_c = app.add_subcommand("genus", "compare genus symbols of two forms");
    auto* symbol_c = app.add_subcommand("symbol", "Hilbert symbol (f, g)_v");
    auto* classify_c = app.add_subcommand("classify", "classes and genera of a discriminant");
    auto* cn_c = app.add_subcommand("classnumber", "number of classes in the genus of a form");
    auto* picard_c = app.add_subcommand("picard", "Picard group of y^2 = D0");
    auto* verify_c = app.add_subcommand("verify", "run a verification sweep");

    for (auto* c : {reduce_c, disc_c, minima_c, repset_c, equal_c, pequal_c, genus_c, cn_c})
        c->add_option("--form", o.forms, "form literal, e.g. \"(t+8, 4, 12*t^2+8*t+2)\"")->required();
    for (auto* c : {repset_c, equal_c, pequal_c, verify_c}) c->add_option("--max-degree", o.max_degree);
    repset_c->add_flag("--counts", o.counts, "include representation numbers");
    symbol_c->add_option("--f", o.f)->required();
    symbol_c->add_option("--g", o.g)->required();
    symbol_c->add_option("--place", o.place, "irreducible polynomial or inf");
    classify_c->add_option("--disc", o.disc)->required();
    classify_c->add_flag("--primitive", o.primitive, "primitive forms only");
    picard_c->add_option("--d0", o.d0)->required();
    picard_c->add_option("--conductor", o.conductor);
    verify_c->add_option("sweep", o.sweep)->required()->check(CLI::IsMember(sweep_names()));
    verify_c->add_option("--samples", o.samples);
    verify_c->add_option("--seed", o.seed);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (o.delta && o.delta >= o.q) throw DomainError("delta must lie in 0..q-1");
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "reduce") return cmd_reduce(o, out);
        if (name == "disc") return cmd_disc(o, out);
        if (name == "minima") return cmd_minima(o, out);
        if (name == "repset") return cmd_repset(o, out);
        if (name == "equal") return cmd_equal(o, out, false);
        if (name == "proper-equal") return cmd_equal(o, out, true);
        if (name == "genus") return cmd_genus(o, out);
        if (name == "symbol") return cmd_symbol(o, out);
        if (name == "classify") return cmd_classify(o, out);
        if (name == "classnumber") return cmd_classnumber(o, out);
        if (name == "picard") return cmd_picard(o, out);
        return cmd_verify(o, out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::Error& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ffqf::cli
