#include "hopftwist/catalog.hpp"
#include "hopftwist/linsolve.hpp"
#include "hopftwist/serialize.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace hopftwist;
namespace fs = std::filesystem;

namespace {

// Input and usage problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A verifier rejected its input; the report has already been printed. Exit code 1.
struct VerifyFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum Exit { ok = 0, failed = 1, usage = 2, distinct = 3 };

struct Globals {
    bool trust = false;
    int jobs = 0;
    std::string format = "json";
} g;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

void emit(const Json& j, const std::string& out) {
    if (out.empty()) std::cout << dump(j);
    else write_json_file(out, j);
}

CycloNum scalar_arg(const std::string& text, int order, const char* flag) {
    try {
        return CycloNum::parse(text, order);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad scalar for ") + flag + ": " + e.what());
    }
}

Deformation load_deformation(const std::string& path) {
    return deformation_from_json(read_json_file(path), fs::path(path).parent_path());
}

// Attaches T by inverting M when the file carries none.
void ensure_T(Deformation& w) {
    if (w.inverse_galois) return;
    try {
        w.inverse_galois = invert_M(w);
    } catch (const SingularError& e) {
        throw VerifyFailed(std::string("no inverse Galois map: ") + e.what());
    }
}

void print_report(const VerifyReport& r) {
    if (g.format == "table") std::cout << r.summary();
    else std::cout << dump(report_to_json(r));
}

int finish_report(const VerifyReport& r) {
    print_report(r);
    if (!r.ok()) {
        std::cerr << "verification failed: " << r.first_failure()->name << "\n";
        return failed;
    }
    return ok;
}

// Writes a deformation; with an output file the parent goes to <stem>.parent.json next to it.
void write_deformation(const Deformation& w, const std::string& out) {
    if (out.empty()) {
        if (g.format == "table") std::cout << "deformation dim " << w.dim << " over a Hopf algebra of dim " << w.parent->dim << (w.inverse_galois ? " with T" : "") << "\n";
        else std::cout << dump(deformation_to_json(w));
        return;
    }
    fs::path p(out);
    fs::path parent = p.parent_path() / (p.stem().string() + ".parent.json");
    write_json_file(parent, hopf_to_json(*w.parent));
    write_json_file(p, deformation_to_json(w, parent.filename().string()));
}

void write_hopf(const HopfAlgebraData& h, const std::string& out) {
    if (out.empty() && g.format == "table") {
        std::cout << "hopf algebra dim " << h.dim << "\n";
        for (int i = 0; i < h.dim; ++i) std::cout << "  " << i << " " << h.labels[i] << "\n";
        return;
    }
    emit(hopf_to_json(h), out);
}

MuNCocycle resolve_cocycle(const std::string& name, const FiniteGroup& grp) {
    MuNCocycle c;
    if (name == "trivial") return trivial_cocycle(grp);
    if (name == "v4" || name == "v4-nondeg") c = v4_nondegenerate_cocycle();
    else if (name == "z3z3" || name == "z3z3-zeta-jk") c = z3z3_zeta_jk_cocycle();
    else if (fs::exists(name)) c = cocycle_from_json(read_json_file(name));
    else throw UsageError("unknown cocycle '" + name + "' (trivial, v4, z3z3 or a JSON file)");
    if (!(c.group == grp)) throw UsageError("cocycle '" + name + "' lives on a different group table");
    return c;
}

std::vector<int> element_list(const FiniteGroup& grp, const std::string& list) {
    std::vector<int> out;
    for (const auto& item : split(list, ',')) {
        int k = grp.index_of(item);
        if (k < 0) {
            try {
                std::size_t used = 0;
                k = std::stoi(item, &used);
                if (used != item.size() || k < 0 || k >= grp.order()) k = -1;
            } catch (const std::exception&) {
                k = -1;
            }
        }
        if (k < 0) throw UsageError("unknown group element '" + item + "'");
        out.push_back(k);
    }
    return out;
}

FiniteGroup group_arg(const std::string& spec) {
    if (spec.empty()) throw UsageError("--group is required");
    try {
        if (fs::exists(spec)) return group_from_json(read_json_file(spec));
        return parse_group_spec(spec);
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad group: ") + e.what());
    }
}

struct ConstructArgs {
    std::string name, group, cocycle = "trivial", subgroup, out;
    std::string a, b, lambda, mu, la, lb, lc;
    int n = 0, field = 0;
};

// Flags each catalog name accepts, beyond --out and --field.
const std::map<std::string, std::vector<std::string>>& construct_flags() {
    static const std::map<std::string, std::vector<std::string>> m{
        {"kg", {"--group"}},
        {"dual-kg", {"--group"}},
        {"kalpha-g", {"--group", "--cocycle"}},
        {"dual-group-def", {"--group", "--subgroup", "--cocycle"}},
        {"taft", {"--n", "--a", "--b"}},
        {"taft-def", {"--n", "--a", "--b"}},
        {"fk3-ks3", {}},
        {"fk3-ks3-def", {"--lambda", "--mu"}},
        {"fk3-dual", {}},
        {"fk3-dual-def", {"--la", "--lb", "--lc"}},
        {"prop510", {"--mu"}},
        {"sec55-hopf", {"--la", "--lb", "--lc"}},
    };
    return m;
}

void verify_or_fail(const VerifyReport& r) {
    if (!r.ok()) {
        print_report(r);
        throw VerifyFailed("constructed object fails " + r.first_failure()->name);
    }
}

void finish_hopf(const HopfAlgebraData& h, const std::string& out) {
    if (!g.trust) verify_or_fail(verify_hopf(h));
    write_hopf(h, out);
}

void finish_deformation(const Deformation& w, const std::string& out) {
    if (!g.trust) verify_or_fail(verify_comodule_algebra(w));
    write_deformation(w, out);
}

int construct(const ConstructArgs& a, CLI::App& sub) {
    auto it = construct_flags().find(a.name);
    if (it == construct_flags().end()) throw UsageError("unknown catalog name '" + a.name + "'");
    for (const char* flag : {"--group", "--cocycle", "--subgroup", "--n", "--a", "--b", "--lambda", "--mu", "--la", "--lb", "--lc"})
        if (sub.count(flag) && std::find(it->second.begin(), it->second.end(), flag) == it->second.end())
            throw UsageError(std::string(flag) + " does not apply to construct " + a.name);
    auto need = [&](const char* flag) {
        if (!sub.count(flag)) throw UsageError(std::string(flag) + " is required for construct " + a.name);
    };
    int field = a.field > 0 ? a.field : 1;
    auto num = [&](const std::string& text, const char* flag) {
        need(flag);
        return scalar_arg(text, field, flag);
    };
    const std::string& n = a.name;
    if (n == "kg") return finish_hopf(group_algebra(group_arg(a.group)), a.out), ok;
    if (n == "dual-kg") return finish_hopf(dual_group_algebra(group_arg(a.group)), a.out), ok;
    if (n == "kalpha-g") {
        FiniteGroup grp = group_arg(a.group);
        return finish_deformation(group_cocycle_deformation(grp, resolve_cocycle(a.cocycle, grp)), a.out), ok;
    }
    if (n == "dual-group-def") {
        FiniteGroup grp = group_arg(a.group);
        std::vector<int> elems;
        if (a.subgroup.empty())
            for (int x = 0; x < grp.order(); ++x) elems.push_back(x);
        else
            elems = element_list(grp, a.subgroup);
        std::optional<Subgroup> f;
        try {
            f.emplace(grp, elems);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("bad subgroup: ") + e.what());
        }
        MuNCocycle alpha = resolve_cocycle(a.cocycle, subgroup_group(*f));
        return finish_deformation(dual_group_deformation(grp, *f, alpha), a.out), ok;
    }
    if (n == "taft" || n == "taft-def") {
        need("--n");
        if (a.n < 2) throw UsageError("--n must be at least 2");
        if (a.field <= 0) field = a.n;
        if (n == "taft" && !sub.count("--a") && !sub.count("--b")) return finish_hopf(taft_hopf(a.n), a.out), ok;
        CycloNum av = num(a.a, "--a"), bv = num(a.b, "--b");
        if (av.is_zero()) throw UsageError("--a must be nonzero");
        return finish_deformation(taft_deformation(a.n, av, bv), a.out), ok;
    }
    if (n == "fk3-ks3") return finish_hopf(fk3_bosonization_group(), a.out), ok;
    if (n == "fk3-ks3-def") return finish_deformation(fk3_deformation_group(num(a.lambda, "--lambda"), num(a.mu, "--mu")), a.out), ok;
    if (n == "fk3-dual") return finish_hopf(fk3_bosonization_dual(), a.out), ok;
    if (n == "fk3-dual-def") return finish_deformation(fk3_deformation_dual(num(a.la, "--la"), num(a.lb, "--lb"), num(a.lc, "--lc")), a.out), ok;
    if (n == "prop510") return finish_hopf(deformed_hopf_prop510(num(a.mu, "--mu")), a.out), ok;
    return finish_hopf(deformed_hopf_sec55(num(a.la, "--la"), num(a.lb, "--lb"), num(a.lc, "--lc")), a.out), ok;
}

int construct_from_presentation(const std::string& file, const std::string& out) {
    PresentedAlgebra a = presentation_from_json(read_json_file(file));
    if (!g.trust) {
        VerifyReport r;
        r.axioms.push_back(check_associative(a.mult));
        r.axioms.push_back(check_unit(a.mult, a.unit));
        verify_or_fail(r);
    }
    emit(algebra_to_json(a), out);
    return ok;
}

int verify(const std::string& what, const std::string& file) {
    if (what == "hopf") return finish_report(verify_hopf(hopf_from_json(read_json_file(file))));
    if (what == "comodule") return finish_report(verify_comodule_algebra(load_deformation(file)));
    if (what == "identities") {
        Deformation w = load_deformation(file);
        ensure_T(w);
        return finish_report(check_galois_identities(w));
    }
    if (what == "cocycle") {
        MuNCocycle c = fs::exists(file) ? cocycle_from_json(read_json_file(file)) : named_cocycle(file);
        VerifyReport r;
        r.axioms.push_back({"group cocycle identity", check_group_cocycle(c), {}});
        if (r.ok()) {
            auto kg = std::make_shared<const HopfAlgebraData>(group_algebra(c.group));
            HopfTwoCocycle lifted = lift_group_cocycle(kg, c);
            CocycleReport cr = check_hopf_cocycle(lifted);
            r.axioms.push_back({"unital", cr.unital, cr.unital ? std::vector<int>{} : cr.witness});
            r.axioms.push_back({"cocycle", cr.cocycle, cr.cocycle ? std::vector<int>{} : cr.witness});
            r.axioms.push_back({"gamma invertible", cr.gamma_invertible, {}});
            if (cr.ok()) {
                try {
                    GammaData gd = gamma_data(lifted);
                    r.axioms.push_back({"alpha inverse", true, {}});
                    AntipodeIdentityReport ar = check_twisted_antipode(lifted, gd);
                    r.axioms.push_back({"twisted antipode", ar.ok(), ar.witness});
                } catch (const std::runtime_error&) {
                    r.axioms.push_back({"alpha inverse", false, {}});
                }
            }
        }
        return finish_report(r);
    }
    throw UsageError("verify expects hopf, comodule, cocycle or identities");
}

int cohomology(const std::string& group, int coeff) {
    FiniteGroup grp = group_arg(group);
    if (coeff <= 0) coeff = grp.order();
    CohomologyGroup h = compute_h2(grp, coeff);
    if (g.format == "table") {
        std::cout << "H^2 image for coefficients mu_" << coeff << ": ";
        if (h.invariant_factors.empty()) std::cout << "trivial";
        for (std::size_t i = 0; i < h.invariant_factors.size(); ++i) std::cout << (i ? " x " : "") << "Z/" << h.invariant_factors[i];
        std::cout << "\n";
        return ok;
    }
    Json j;
    j["schema"] = kSchema;
    j["kind"] = "cohomology";
    j["group"] = group;
    j["N"] = coeff;
    j["trivial"] = h.invariant_factors.empty();
    j["invariant_factors"] = h.invariant_factors;
    Json reps = Json::array();
    for (const auto& c : h.representatives) reps.push_back(c.exponents);
    j["representatives"] = reps;
    std::cout << dump(j);
    return ok;
}

struct InvariantArgs {
    int depth = 1;
    std::string specs, h_set, out;
    bool rationality = false;
};

Fingerprint compute_fingerprint(Deformation w, const InvariantArgs& a) {
    ensure_T(w);
    FingerprintOptions opt;
    opt.depth = a.depth;
    if (!a.h_set.empty())
        for (const auto& l : split(a.h_set, ',')) {
            int k = w.parent->index_of(l);
            if (k < 0) throw UsageError("unknown basis label '" + l + "' in --h-set");
            opt.h_set.push_back(k);
        }
    if (!a.specs.empty()) {
        opt.specs = specs_from_json(read_json_file(a.specs), w.parent->labels, w.parent->labels);
        for (const auto& s : opt.specs) opt.depth = std::max(opt.depth, s.l);
    }
    try {
        return fingerprint(w, opt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void print_fingerprint(const Fingerprint& f, const InvariantArgs& a) {
    Json j = fingerprint_to_json(f);
    std::optional<RationalityReport> rr;
    if (a.rationality) rr = rationality_report(f);
    if (g.format == "table" && a.out.empty()) {
        for (const auto& e : f.entries) {
            std::cout << e.spec.l << " " << e.spec.sigma.str() << " " << f.f_labels[e.spec.f];
            for (int h : e.spec.hs) std::cout << " " << f.h_labels[h];
            std::cout << " : " << e.value << "\n";
        }
        if (rr) std::cout << "rational: " << rr->rational << " of " << rr->nonzero << "\n";
        return;
    }
    if (rr) {
        Json r;
        r["nonzero"] = rr->nonzero;
        r["rational"] = rr->rational;
        Json irr = Json::array();
        for (const auto& s : rr->irrational) irr.push_back(spec_to_json(s, f.f_labels, f.h_labels));
        r["irrational"] = irr;
        j["rationality"] = r;
    }
    emit(j, a.out);
}

Fingerprint fingerprint_arg(const std::string& file, const InvariantArgs& a) {
    Json j = read_json_file(file);
    if (j.is_object() && j.value("kind", "") == "fingerprint") return fingerprint_from_json(j);
    return compute_fingerprint(deformation_from_json(j, fs::path(file).parent_path()), a);
}

int compare(const std::string& x, const std::string& y, const InvariantArgs& a) {
    Fingerprint fx = fingerprint_arg(x, a), fy = fingerprint_arg(y, a);
    Verdict v;
    try {
        v = compare_fingerprints(fx, fy);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool same = v == Verdict::indistinguishable;
    if (g.format == "table") {
        std::cout << (same ? "indistinguishable" : "distinct") << "\n";
    } else {
        Json j;
        j["schema"] = kSchema;
        j["kind"] = "comparison";
        j["verdict"] = same ? "indistinguishable" : "distinct";
        j["depth"] = fx.depth;
        std::cout << dump(j);
    }
    return same ? ok : distinct;
}

int galois(const std::string& file, long long j, const std::string& out) {
    Deformation w = load_deformation(file);
    Deformation t;
    try {
        t = galois_twist_deformation(w, j);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!g.trust) verify_or_fail(verify_comodule_algebra(t));
    write_deformation(t, out);
    return ok;
}

int double_twist_cmd(const std::string& file, const std::string& cocycle, const std::string& out) {
    if (file.empty() == cocycle.empty()) throw UsageError("double-twist takes a deformation file or --cocycle, not both");
    HopfAlgebraData l;
    if (!cocycle.empty()) {
        MuNCocycle c = fs::exists(cocycle) ? cocycle_from_json(read_json_file(cocycle)) : named_cocycle(cocycle);
        if (!check_group_cocycle(c)) throw VerifyFailed("input is not a 2-cocycle");
        l = double_twist(lift_group_cocycle(std::make_shared<const HopfAlgebraData>(group_algebra(c.group)), c));
    } else {
        l = double_twist_from_deformation(load_deformation(file));
    }
    finish_hopf(l, out);
    return ok;
}

int run(int argc, char** argv) {
    CLI::App app{"Hopf algebras, cocycle deformations and their trace invariants over cyclotomic fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--trust", g.trust, "skip re-verification of constructed objects");
    app.add_option("--jobs", g.jobs, "worker threads (default: all cores)")->envname("HOPFTWIST_JOBS")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));

    ConstructArgs ca;
    std::string pres_file;
    auto* con = app.add_subcommand("construct", "build a catalog object or an algebra from a presentation");
    con->add_option("name", ca.name, "catalog name or from-presentation")->required();
    con->add_option("file", pres_file, "presentation JSON for from-presentation");
    con->add_option("--group", ca.group, "group spec or JSON table file");
    con->add_option("--cocycle", ca.cocycle, "trivial, v4, z3z3 or a cocycle JSON file");
    con->add_option("--subgroup", ca.subgroup, "comma-separated element labels or indices");
    con->add_option("--n", ca.n, "Taft order");
    con->add_option("--a", ca.a);
    con->add_option("--b", ca.b);
    con->add_option("--lambda", ca.lambda);
    con->add_option("--mu", ca.mu);
    con->add_option("--la", ca.la);
    con->add_option("--lb", ca.lb);
    con->add_option("--lc", ca.lc);
    con->add_option("--field", ca.field, "order of the root of unity z in scalar flags");
    con->add_option("--out", ca.out, "output file (default stdout)");

    std::string vwhat, vfile;
    auto* ver = app.add_subcommand("verify", "run a verifier; exit 1 on failure");
    ver->add_option("what", vwhat, "hopf | comodule | cocycle | identities")->required()->check(CLI::IsMember({"hopf", "comodule", "cocycle", "identities"}));
    ver->add_option("file", vfile, "input JSON (or a cocycle name)")->required();

    std::string cgroup;
    int coeff = 0;
    auto* coh = app.add_subcommand("cohomology", "image of H^2(G, mu_N) in H^2(G, K^x)");
    coh->add_option("--group", cgroup, "group spec or JSON table file")->required();
    coh->add_option("--coeff", coeff, "N (default |G|)");

    InvariantArgs ia;
    std::string ifile;
    auto* inv = app.add_subcommand("invariants", "fingerprint of basic invariants");
    inv->add_option("file", ifile, "deformation JSON")->required();
    auto add_depth = [&](CLI::App* s) {
        s->add_option("--depth", ia.depth, "maximal l")->check(CLI::NonNegativeNumber);
        s->add_option("--specs", ia.specs, "curated spec list JSON");
        s->add_option("--h-set", ia.h_set, "comma-separated basis labels the h arguments range over");
    };
    add_depth(inv);
    inv->add_flag("--rationality", ia.rationality, "report which values are rational");
    inv->add_option("--out", ia.out, "output file (default stdout)");

    std::string cx, cy;
    auto* cmp = app.add_subcommand("compare", "compare fingerprints; exit 3 when distinct");
    cmp->add_option("a", cx, "deformation or fingerprint JSON")->required();
    cmp->add_option("b", cy, "deformation or fingerprint JSON")->required();
    add_depth(cmp);

    std::string gfile, gout;
    long long gj = 0;
    auto* gal = app.add_subcommand("galois", "apply zeta -> zeta^j to a deformation");
    gal->add_option("file", gfile, "deformation JSON")->required();
    gal->add_option("--j", gj, "exponent coprime to N")->required();
    gal->add_option("--out", gout, "output file (default stdout)");

    std::string dfile, dcocycle, dout;
    auto* dt = app.add_subcommand("double-twist", "the Hopf algebra L with W an (L, H)-biGalois object");
    dt->add_option("file", dfile, "deformation JSON");
    dt->add_option("--cocycle", dcocycle, "group cocycle name or JSON: twist KG directly");
    dt->add_option("--out", dout, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    if (g.jobs > 0) omp_set_num_threads(g.jobs);

    try {
        if (*con) {
            if (ca.name == "from-presentation") {
                if (pres_file.empty()) throw UsageError("construct from-presentation needs a presentation file");
                return construct_from_presentation(pres_file, ca.out);
            }
            if (!pres_file.empty()) throw UsageError("unexpected argument '" + pres_file + "'");
            return construct(ca, *con);
        }
        if (*ver) return verify(vwhat, vfile);
        if (*coh) return cohomology(cgroup, coeff);
        if (*inv) {
            print_fingerprint(compute_fingerprint(load_deformation(ifile), ia), ia);
            return ok;
        }
        if (*cmp) return compare(cx, cy, ia);
        if (*gal) return galois(gfile, gj, gout);
        if (*dt) return double_twist_cmd(dfile, dcocycle, dout);
    } catch (const VerifyFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    } catch (const GeneratorTwistError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    } catch (const std::exception& e) {
        // FormatError, UsageError and rejected parameters
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
