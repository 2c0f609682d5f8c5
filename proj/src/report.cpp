#include "spacetime/report.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "spacetime/error.hpp"

namespace spacetime {

namespace {

using Json = nlohmann::ordered_json;

struct Context {
    const ManifoldSpec& spec;
    Curvatures curv;

    explicit Context(const ManifoldSpec& s) : spec(s), curv(s.g()) {}

    const MQEStructure& structure(const std::string& check) const {
        if (!spec.structure) throw InputError("check '" + check + "' needs a structure block");
        return *spec.structure;
    }
    const FluidParams& fluid(const std::string& check) const {
        if (!spec.fluid) throw InputError("check '" + check + "' needs a fluid block");
        return *spec.fluid;
    }
    const VectorField& flow(const std::string& check) const {
        if (!spec.flow()) throw InputError("check '" + check + "' needs a vector declaration");
        return *spec.flow();
    }
};

std::string form_str(const Tensor& t) {
    std::string s = "(";
    for (int i = 0; i < t.dim(); ++i) s += (i ? ", " : "") + t(i).str();
    return s + ")";
}

CheckResult zoo_flat(const Context& c, CurvatureKind k) {
    try {
        return is_flat(c.curv.get(k, c.spec.semiconformal()), kind_name(k));
    } catch (const DimensionError& e) {
        CheckResult r;
        r.name = kind_name(k) + "-flat";
        r.verdict = Verdict::Inapplicable;
        r.notes.push_back(e.what());
        return r;
    }
}

CheckResult pseudo(const Context& c, CurvatureKind k) {
    CheckResult r;
    r.name = kind_name(k) + "-Ricci pseudosymmetric";
    try {
        auto o = ricci_pseudosymmetry_test(c.curv, k, c.spec.semiconformal());
        r.outcome = outcome_name(o);
        r.verdict = o.kind == PseudosymmetryOutcome::Kind::Independent ? Verdict::Fails : Verdict::Holds;
        if (o.witness) r.witness = index_label(*o.witness);
        if (o.kind == PseudosymmetryOutcome::Kind::Proportional) r.scalars.emplace_back("F_S", o.ratio);
    } catch (const DimensionError& e) {
        r.verdict = Verdict::Inapplicable;
        r.notes.push_back(e.what());
    }
    return r;
}

std::vector<CheckResult> run_check(const Context& c, const std::string& name) {
    const Metric& g = c.spec.g();
    auto one = [](CheckResult r) { return std::vector<CheckResult>{std::move(r)}; };
    if (name == "einstein") return one(verify_einstein(g, c.curv.ricci()));
    if (name == "qe") {
        const auto& s = c.structure(name);
        return one(verify_qe(g, c.curv.ricci(), s.alpha, s.beta, s.A, s.eps1));
    }
    if (name == "nqe") {
        const auto& s = c.structure(name);
        return one(verify_nqe(g, c.curv.ricci(), s.alpha, s.beta, s.D()));
    }
    if (name == "mqe") return one(verify_mqe(g, c.curv.ricci(), c.structure(name)));
    if (name == "trace") return one(verify_trace(g, c.curv.scalar(), c.structure(name).alpha));
    if (name == "recover") {
        CheckResult r;
        r.name = "M(QE) structure recovery";
        auto rec = recover_mqe_structure(c.curv);
        if (!rec.structure) {
            r.verdict = Verdict::Inapplicable;
            r.notes.push_back(rec.reason);
            return one(r);
        }
        const auto& s = *rec.structure;
        CheckResult v = verify_mqe(g, c.curv.ricci(), s);
        r.verdict = v.verdict;
        r.witness = v.witness;
        r.scalars = {{"alpha", s.alpha}, {"beta", s.beta}};
        r.notes.push_back("A = " + form_str(s.A));
        r.notes.push_back("B = " + form_str(s.B));
        r.notes.push_back("eps1 = " + std::to_string(s.eps1) + ", eps2 = " + std::to_string(s.eps2));
        return one(r);
    }
    if (auto k = parse_kind(name)) return one(zoo_flat(c, *k));
    if (name == "pseudosymmetry") {
        std::vector<CheckResult> out;
        for (auto k : all_curvature_kinds()) out.push_back(pseudo(c, k));
        return out;
    }
    if (name.rfind("pseudosymmetry.", 0) == 0) {
        if (auto k = parse_kind(name.substr(15))) return one(pseudo(c, *k));
    }
    if (name == "nullity") {
        if (!c.spec.nullity_k) throw InputError("check 'nullity' needs nullity.k");
        return one(k_nullity_check(c.curv, c.flow(name), *c.spec.nullity_k));
    }
    if (name == "theorems") return theorem_suite(c.curv, c.structure(name), c.spec.semiconformal()).checks();
    if (name == "efe") {
        const auto& f = c.fluid(name);
        Tensor T = perfect_fluid_T(g, c.structure(name).A, f);
        Tensor res = efe_residual(g, c.curv.ricci(), c.curv.scalar(), T, f.k);
        CheckResult r;
        r.name = "Einstein field equation";
        auto w = res.first_nonzero();
        r.verdict = w ? Verdict::Fails : Verdict::Holds;
        if (w) r.witness = index_label(*w);
        return one(r);
    }
    if (name == "fluid")
        return fluid_scalar_identities(c.structure(name).alpha, c.curv.scalar(), c.fluid(name)).checks();
    if (name == "norm") {
        const auto& f = c.fluid(name);
        CheckResult r;
        r.name = "||Q||^2 = r^2/4";
        Expr norm = ricci_operator_norm_sq(c.curv.ricci(), c.curv.inverse());
        const Expr& rr = c.curv.scalar();
        r.scalars = {{"||Q||^2", norm}, {"r", rr}};
        if (!(f.sigma + f.p).is_zero()) {
            r.verdict = Verdict::Inapplicable;
            r.notes.push_back("premise σ + p = 0 not satisfied");
        } else {
            r.verdict = (norm - rr * rr / Expr(4)).is_zero() ? Verdict::Holds : Verdict::Fails;
        }
        return one(r);
    }
    if (name == "vacuum") return one(vacuum_check(c.curv.scalar(), c.fluid(name)));
    if (name == "killing") {
        const auto& s = c.structure(name);
        Tensor T = perfect_fluid_T(g, s.A, c.fluid(name));
        return one(killing_equivalence_check(g, c.flow(name), T, s.alpha, s.beta).as_check());
    }
    if (name == "soliton") {
        auto rep = soliton_classify(c.fluid(name));
        CheckResult r;
        r.name = "soliton";
        r.outcome = soliton_class_name(rep.cls);
        r.verdict = rep.cls == SolitonClass::Indeterminate ? Verdict::Inapplicable : Verdict::Holds;
        r.scalars = {{"lambda", rep.lambda}};
        for (const auto& p : rep.premises) r.notes.push_back("assumed: " + p);
        return one(r);
    }
    throw InputError("unknown check '" + name + "'");
}

std::vector<std::string> default_checks(const ManifoldSpec& s) {
    std::vector<std::string> v{"einstein"};
    if (s.structure) {
        for (const char* n : {"mqe", "trace", "nqe", "theorems"}) v.emplace_back(n);
    }
    v.emplace_back("recover");
    for (auto k : all_curvature_kinds()) v.push_back(kind_name(k));
    v.emplace_back("pseudosymmetry");
    if (s.flow() && s.nullity_k) v.emplace_back("nullity");
    if (s.fluid) {
        if (s.structure) {
            v.emplace_back("fluid");
            v.emplace_back("efe");
        }
        for (const char* n : {"norm", "vacuum", "soliton"}) v.emplace_back(n);
        if (s.structure && s.flow()) v.emplace_back("killing");
    }
    return v;
}

TensorListing listing(std::string name, std::string symbol, const Tensor& t, bool sym_lower_pair) {
    TensorListing l{std::move(name), std::move(symbol), t.valence().up, {}};
    for (std::size_t f = 0; f < t.size(); ++f) {
        if (t[f].is_zero()) continue;
        Index ix = t.unflatten(f);
        if (sym_lower_pair && ix[ix.size() - 2] > ix[ix.size() - 1]) continue;
        l.components.push_back({ix, t[f]});
    }
    return l;
}

const char* zoo_symbol(CurvatureKind k) {
    switch (k) {
        case CurvatureKind::Riemann: return "R";
        case CurvatureKind::W2: return "W2";
        case CurvatureKind::Projective: return "P";
        case CurvatureKind::Conformal: return "C";
        case CurvatureKind::Conharmonic: return "H";
        case CurvatureKind::Semiconformal: return "C~";
    }
    return "?";
}

void analyze(const Context& c, AuditReport& rep) {
    rep.tensors.push_back(listing("christoffel", "Γ", c.curv.christoffel(), true));
    rep.tensors.push_back(listing("riemann", "R", c.curv.riemann(), false));
    rep.tensors.push_back(listing("ricci", "S", c.curv.ricci(), true));
    TensorListing sc{"scalar", "r", 0, {}};
    sc.components.push_back({{}, c.curv.scalar()});
    rep.tensors.push_back(sc);
    for (auto k : all_curvature_kinds()) {
        if (k == CurvatureKind::Riemann) continue;
        if (std::find(c.spec.checks.begin(), c.spec.checks.end(), kind_name(k)) == c.spec.checks.end()) continue;
        try {
            rep.tensors.push_back(listing(kind_name(k), zoo_symbol(k), c.curv.get(k, c.spec.semiconformal()), false));
        } catch (const DimensionError&) {
            // reported as inapplicable by the flatness check
        }
    }
}

void classify(const Context& c, AuditReport& rep, const std::vector<std::string>& names,
              const std::set<std::string>& asserted) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        for (auto& r : run_check(c, n)) {
            if (!seen.insert(r.name).second) continue;
            r.asserted = asserted.count(n) > 0;
            rep.checks.push_back(std::move(r));
        }
    }
}

std::string component_label(const TensorListing& t, const Index& ix, int dim) {
    if (ix.empty()) return t.symbol;
    auto part = [&](std::size_t b, std::size_t e) {
        std::string s;
        for (std::size_t i = b; i < e; ++i) {
            if (dim >= 10 && i > b) s += ',';
            s += std::to_string(ix[i] + 1);
        }
        return dim >= 10 ? "(" + s + ")" : s;
    };
    std::size_t up = static_cast<std::size_t>(t.up);
    std::string s = t.symbol;
    if (up) s += "^" + part(0, up);
    return s + "_" + part(up, ix.size());
}

std::string value_str(const Expr& e, const std::optional<Point>& p) {
    if (!p) return e.str();
    try {
        return format_real(evaluate(e, *p, 50), 12);
    } catch (const DomainError&) {
        return "undefined";
    }
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Analyze: return "analyze";
        case Command::Classify: return "classify";
        case Command::Check: return "check";
        case Command::Report: return "report";
    }
    return "?";
}

}  // namespace

std::optional<Command> parse_command(const std::string& w) {
    for (Command c : {Command::Analyze, Command::Classify, Command::Check, Command::Report})
        if (command_name(c) == w) return c;
    return std::nullopt;
}

AuditReport run(const ManifoldSpec& spec, Command command, const std::string& check_name) {
    Context c(spec);
    AuditReport rep;
    rep.spec = spec;
    rep.command = command;
    std::set<std::string> asserted(spec.checks.begin(), spec.checks.end());
    auto classify_names = [&] {
        std::vector<std::string> names;
        for (const auto& n : known_checks()) {
            auto d = default_checks(spec);
            if (asserted.count(n) || std::find(d.begin(), d.end(), n) != d.end()) names.push_back(n);
        }
        return names;
    };
    switch (command) {
        case Command::Analyze: analyze(c, rep); break;
        case Command::Classify: classify(c, rep, classify_names(), asserted); break;
        case Command::Check: {
            const auto& known = known_checks();
            if (std::find(known.begin(), known.end(), check_name) == known.end())
                throw InputError("unknown check '" + check_name + "'");
            classify(c, rep, {check_name}, {check_name});
            break;
        }
        case Command::Report:
            analyze(c, rep);
            classify(c, rep, classify_names(), asserted);
            break;
    }
    return rep;
}

Point parse_point(const std::string& assignments, const std::vector<std::string>& coords) {
    Point p;
    std::stringstream ss(assignments);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("numeric point: expected name=value, got '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
                   name.end());
        if (std::find(coords.begin(), coords.end(), name) == coords.end())
            throw InputError("numeric point: unknown coordinate '" + name + "'");
        std::optional<Rational> q;
        try {
            q = parse_expr(item.substr(eq + 1)).as_rational();
        } catch (const ParseError& e) {
            throw InputError("numeric point: " + std::string(e.what()));
        }
        if (!q) throw InputError("numeric point: value for " + name + " must be rational");
        p[name] = *q;
    }
    for (const auto& c : coords)
        if (!p.count(c)) throw InputError("numeric point: missing value for " + c);
    return p;
}

std::string render_text(const AuditReport& r, const std::optional<Point>& numeric) {
    const ManifoldSpec& s = r.spec;
    std::ostringstream out;
    out << "manifold " << s.name << " (dim " << s.dim() << "; coords";
    for (const auto& c : s.coords) out << ' ' << c;
    out << ")\n";
    if (numeric) {
        out << "numeric at";
        for (const auto& [k, v] : *numeric) out << ' ' << k << '=' << v.get_str();
        out << '\n';
    }
    for (const auto& t : r.tensors) {
        out << t.name << '\n';
        if (t.components.empty()) out << "  (all components zero)\n";
        for (const auto& c : t.components)
            out << "  " << component_label(t, c.index, s.dim()) << " = " << value_str(c.value, numeric) << '\n';
    }
    if (!r.checks.empty()) out << "checks\n";
    for (const auto& c : r.checks) {
        out << "  " << c.name << ": " << verdict_name(c.verdict);
        if (c.outcome) out << " [" << *c.outcome << ']';
        if (c.witness) out << " at " << *c.witness;
        out << '\n';
        for (const auto& [k, v] : c.scalars) out << "    " << k << " = " << value_str(v, numeric) << '\n';
        for (const auto& n : c.notes) out << "    note: " << n << '\n';
    }
    return out.str();
}

std::string render_json(const AuditReport& r, const std::optional<Point>& numeric) {
    const ManifoldSpec& s = r.spec;
    Json m;
    m["name"] = s.name;
    m["dim"] = s.dim();
    m["coords"] = s.coords;
    Json metric = Json::array();
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i; j < s.dim(); ++j)
            if (!s.g()(i, j).is_zero())
                metric.push_back({{"indices", {i + 1, j + 1}}, {"value", value_str(s.g()(i, j), numeric)}});
    m["metric"] = metric;
    Json dom = Json::array();
    for (const auto& c : s.g().constraints()) dom.push_back(c.coord + (c.greater ? " > " : " < ") + c.bound.get_str());
    m["domain"] = dom;

    Json doc;
    doc["command"] = command_name(r.command);
    doc["manifold"] = m;
    if (numeric) {
        Json pt = Json::object();
        for (const auto& [k, v] : *numeric) pt[k] = v.get_str();
        doc["numeric"] = pt;
    }
    Json tensors = Json::object();
    for (const auto& t : r.tensors) {
        Json list = Json::array();
        for (const auto& c : t.components) {
            Json idx = Json::array();
            for (int i : c.index) idx.push_back(i + 1);
            list.push_back({{"indices", idx}, {"value", value_str(c.value, numeric)}});
        }
        tensors[t.name] = list;
    }
    doc["tensors"] = tensors;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json j;
        j["name"] = c.name;
        j["verdict"] = verdict_name(c.verdict);
        if (c.outcome) j["outcome"] = *c.outcome;
        if (c.witness) j["witness"] = *c.witness;
        if (!c.scalars.empty()) {
            Json sc = Json::object();
            for (const auto& [k, v] : c.scalars) sc[k] = value_str(v, numeric);
            j["scalars"] = sc;
        }
        if (!c.notes.empty()) j["notes"] = c.notes;
        j["asserted"] = c.asserted;
        checks.push_back(j);
    }
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

int exit_status(const AuditReport& r) {
    for (const auto& c : r.checks)
        if (c.asserted && c.verdict == Verdict::Fails) return 1;
    return 0;
}

}  // namespace spacetime
