#include "hopftwist/serialize.hpp"

#include <fstream>

namespace hopftwist {

namespace {

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

Json header(const char* kind) {
    Json j;
    j["schema"] = kSchema;
    j["kind"] = kind;
    return j;
}

void check_header(const Json& j, const char* kind) {
    if (!j.is_object()) fail(std::string("expected a JSON object for ") + kind);
    if (!j.contains("schema")) fail("missing schema field");
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != kSchema) fail("schema version mismatch: expected " + std::string(kSchema));
    if (!j.contains("kind") || !j["kind"].is_string() || j["kind"].get<std::string>() != kind) fail(std::string("expected a document of kind ") + kind);
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) fail(std::string("missing field '") + name + "'");
    return *it;
}

template <class T>
T get_as(const Json& j, const char* name) {
    try {
        return field(j, name).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(std::string("field '") + name + "' has the wrong type");
    }
}

int order_of(const std::vector<CycloNum>& v) {
    int n = 1;
    for (const auto& c : v) n = lcm_order(n, c.order());
    return n;
}

CycloNum scalar(const Json& j, int n) {
    if (!j.is_string()) fail("scalars must be strings");
    try {
        return CycloNum::parse(j.get<std::string>(), n);
    } catch (const std::exception& e) {
        fail("bad scalar '" + j.get<std::string>() + "': " + e.what());
    }
}

Json vector_json(const std::vector<CycloNum>& v, int n) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(c.str(n));
    return a;
}

std::vector<CycloNum> vector_from(const Json& j, int n, std::size_t dim, const char* name) {
    if (!j.is_array() || j.size() != dim) fail(std::string("field '") + name + "' must list " + std::to_string(dim) + " scalars");
    std::vector<CycloNum> v;
    for (const auto& x : j) v.push_back(scalar(x, n));
    return v;
}

Json tensor_json(const SparseTensor& t, int n) {
    Json a = Json::array();
    for (const auto& [k, v] : t.entries()) a.push_back(Json::array({t.decode(k), v.str(n)}));
    return a;
}

SparseTensor tensor_from(const Json& j, int n, std::vector<int> out, std::vector<int> in, const char* name) {
    SparseTensor t(out, in);
    std::vector<int> shape = t.shape();
    if (!j.is_array()) fail(std::string("field '") + name + "' must be an entry list");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_array()) fail(std::string("malformed entry in '") + name + "'");
        std::vector<int> idx;
        try {
            idx = e[0].get<std::vector<int>>();
        } catch (const nlohmann::json::exception&) {
            fail(std::string("malformed index in '") + name + "'");
        }
        if (idx.size() != shape.size()) fail(std::string("shape inconsistency in '") + name + "': index has " + std::to_string(idx.size()) + " legs");
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] < 0 || idx[i] >= shape[i]) fail(std::string("shape inconsistency in '") + name + "': index out of range");
        t.set(idx, scalar(e[1], n));
    }
    return t;
}

int read_order(const Json& j) {
    int n = get_as<int>(j, "N");
    if (n < 1) fail("N must be positive");
    return n;
}

std::vector<std::string> labels_from(const Json& j, std::size_t dim) {
    auto l = get_as<std::vector<std::string>>(j, "labels");
    if (l.size() != dim) fail("labels do not match dim");
    return l;
}

int label_index(const std::vector<std::string>& labels, const std::string& s, const char* what) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == s) return static_cast<int>(i);
    fail(std::string("unknown ") + what + " label '" + s + "'");
}

}  // namespace

Json hopf_to_json(const HopfAlgebraData& h) {
    int n = h.N;
    for (int o : {order_of(h.unit), order_of(h.counit), h.mult.order(), h.comult.order(), h.antipode.order()}) n = lcm_order(n, o);
    Json j = header("hopf");
    j["dim"] = h.dim;
    j["N"] = n;
    j["labels"] = h.labels;
    j["unit"] = vector_json(h.unit, n);
    j["counit"] = vector_json(h.counit, n);
    j["mult"] = tensor_json(h.mult, n);
    j["comult"] = tensor_json(h.comult, n);
    j["antipode"] = tensor_json(h.antipode, n);
    return j;
}

HopfAlgebraData hopf_from_json(const Json& j) {
    check_header(j, "hopf");
    HopfAlgebraData h;
    h.dim = get_as<int>(j, "dim");
    if (h.dim < 1) fail("dim must be positive");
    h.N = read_order(j);
    int d = h.dim;
    h.labels = labels_from(j, d);
    h.unit = vector_from(field(j, "unit"), h.N, d, "unit");
    h.counit = vector_from(field(j, "counit"), h.N, d, "counit");
    h.mult = tensor_from(field(j, "mult"), h.N, {d}, {d, d}, "mult");
    h.comult = tensor_from(field(j, "comult"), h.N, {d, d}, {d}, "comult");
    h.antipode = tensor_from(field(j, "antipode"), h.N, {d}, {d}, "antipode");
    return h;
}

Json deformation_to_json(const Deformation& w, const std::string& parent_ref) {
    int n = w.parent->N;
    for (int o : {order_of(w.unit), w.mult.order(), w.coaction.order()}) n = lcm_order(n, o);
    if (w.inverse_galois) n = lcm_order(n, w.inverse_galois->order());
    Json j = header("deformation");
    j["dim"] = w.dim;
    j["N"] = n;
    j["labels"] = w.labels;
    j["unit"] = vector_json(w.unit, n);
    j["mult"] = tensor_json(w.mult, n);
    j["coaction"] = tensor_json(w.coaction, n);
    if (w.inverse_galois) j["inverse_galois"] = tensor_json(*w.inverse_galois, n);
    j["provenance"] = w.provenance;
    if (parent_ref.empty()) j["parent_hopf"] = hopf_to_json(*w.parent);
    else j["parent_hopf"] = parent_ref;
    return j;
}

Deformation deformation_from_json(const Json& j, const std::filesystem::path& base_dir) {
    check_header(j, "deformation");
    const Json& p = field(j, "parent_hopf");
    HopfAlgebraData parent;
    if (p.is_string()) {
        std::filesystem::path path = p.get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        if (!std::filesystem::exists(path)) fail("parent Hopf algebra file not found: " + path.string());
        parent = hopf_from_json(read_json_file(path));
    } else {
        parent = hopf_from_json(p);
    }
    Deformation w;
    w.parent = std::make_shared<const HopfAlgebraData>(std::move(parent));
    w.dim = get_as<int>(j, "dim");
    if (w.dim < 1) fail("dim must be positive");
    int n = read_order(j);
    int d = w.dim, nh = w.parent->dim;
    w.labels = labels_from(j, d);
    w.unit = vector_from(field(j, "unit"), n, d, "unit");
    w.mult = tensor_from(field(j, "mult"), n, {d}, {d, d}, "mult");
    w.coaction = tensor_from(field(j, "coaction"), n, {d, nh}, {d}, "coaction");
    if (j.contains("inverse_galois")) w.inverse_galois = tensor_from(j["inverse_galois"], n, {d, d}, {d, nh}, "inverse_galois");
    w.provenance = j.contains("provenance") && j["provenance"].is_string() ? j["provenance"].get<std::string>() : "from-file";
    return w;
}

FiniteGroup group_from_json(const Json& j) {
    try {
        if (j.is_string()) return parse_group_spec(j.get<std::string>());
        if (j.is_object()) {
            auto table = get_as<std::vector<std::vector<int>>>(j, "table");
            std::vector<std::string> labels;
            if (j.contains("labels")) labels = get_as<std::vector<std::string>>(j, "labels");
            return FiniteGroup::from_table(std::move(table), std::move(labels));
        }
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("bad group: ") + e.what());
    }
    fail("group must be a spec string or {\"table\": ...}");
}

MuNCocycle named_cocycle(const std::string& name) {
    if (name == "v4-nondeg") return v4_nondegenerate_cocycle();
    if (name == "z3z3-zeta-jk") return z3z3_zeta_jk_cocycle();
    fail("unknown cocycle name '" + name + "'");
}

Json cocycle_to_json(const MuNCocycle& c, const std::string& group_spec) {
    Json j = header("cocycle");
    if (group_spec.empty()) {
        Json g;
        g["table"] = c.group.table();
        g["labels"] = c.group.labels();
        j["group"] = g;
    } else {
        j["group"] = group_spec;
    }
    j["N"] = c.N;
    j["exponents"] = c.exponents;
    return j;
}

MuNCocycle cocycle_from_json(const Json& j) {
    if (j.is_string()) return named_cocycle(j.get<std::string>());
    if (j.is_object() && j.contains("schema")) check_header(j, "cocycle");
    MuNCocycle c;
    c.group = group_from_json(field(j, "group"));
    c.N = read_order(j);
    c.exponents = get_as<std::vector<std::vector<int>>>(j, "exponents");
    auto g = static_cast<std::size_t>(c.group.order());
    if (c.exponents.size() != g) fail("exponent table does not match the group order");
    for (auto& row : c.exponents) {
        if (row.size() != g) fail("exponent table does not match the group order");
        for (int& e : row) e = ((e % c.N) + c.N) % c.N;
    }
    return c;
}

Json spec_to_json(const InvariantSpec& s, const std::vector<std::string>& f_labels, const std::vector<std::string>& h_labels) {
    Json e;
    e["l"] = s.l;
    e["sigma"] = s.sigma.images();
    e["f"] = f_labels.at(s.f);
    Json hs = Json::array();
    for (int h : s.hs) hs.push_back(h_labels.at(h));
    e["hs"] = hs;
    return e;
}

namespace {

InvariantSpec spec_from(const Json& e, const std::vector<std::string>& f_labels, const std::vector<std::string>& h_labels) {
    InvariantSpec s;
    s.l = get_as<int>(e, "l");
    try {
        s.sigma = Permutation(get_as<std::vector<int>>(e, "sigma"));
    } catch (const std::invalid_argument& ex) {
        fail(std::string("bad sigma: ") + ex.what());
    }
    s.f = label_index(f_labels, get_as<std::string>(e, "f"), "functional");
    for (const auto& h : get_as<std::vector<std::string>>(e, "hs")) s.hs.push_back(label_index(h_labels, h, "basis"));
    if (s.l < 0 || s.sigma.size() != s.l + 1 || static_cast<int>(s.hs.size()) != s.l) fail("spec needs sigma on l + 1 legs and l elements hs");
    return s;
}

}  // namespace

Json fingerprint_to_json(const Fingerprint& f) {
    int n = 1;
    for (const auto& e : f.entries) n = lcm_order(n, e.value.order());
    Json j = header("fingerprint");
    j["depth"] = f.depth;
    j["N"] = n;
    j["h_labels"] = f.h_labels;
    j["f_labels"] = f.f_labels;
    Json hset = Json::array();
    for (int h : f.h_set) hset.push_back(f.h_labels.at(h));
    j["h_set"] = hset;
    Json es = Json::array();
    for (const auto& e : f.entries) {
        Json x = spec_to_json(e.spec, f.f_labels, f.h_labels);
        x["value"] = e.value.str(n);
        es.push_back(std::move(x));
    }
    j["entries"] = es;
    return j;
}

Fingerprint fingerprint_from_json(const Json& j) {
    check_header(j, "fingerprint");
    Fingerprint f;
    f.depth = get_as<int>(j, "depth");
    int n = read_order(j);
    f.h_labels = get_as<std::vector<std::string>>(j, "h_labels");
    f.f_labels = get_as<std::vector<std::string>>(j, "f_labels");
    for (const auto& h : get_as<std::vector<std::string>>(j, "h_set")) f.h_set.push_back(label_index(f.h_labels, h, "basis"));
    const Json& es = field(j, "entries");
    if (!es.is_array()) fail("entries must be a list");
    for (const auto& e : es) f.entries.push_back({spec_from(e, f.f_labels, f.h_labels), scalar(field(e, "value"), n)});
    return f;
}

std::vector<InvariantSpec> specs_from_json(const Json& j, const std::vector<std::string>& f_labels, const std::vector<std::string>& h_labels) {
    const Json& list = j.is_object() ? field(j, "specs") : j;
    if (!list.is_array()) fail("specs must be a list");
    std::vector<InvariantSpec> out;
    for (const auto& e : list) out.push_back(spec_from(e, f_labels, h_labels));
    return out;
}

Json report_to_json(const VerifyReport& r) {
    Json j = header("verify-report");
    j["ok"] = r.ok();
    Json axioms = Json::array();
    for (const auto& a : r.axioms) {
        Json x;
        x["name"] = a.name;
        x["ok"] = a.ok;
        if (!a.ok) x["witness"] = a.witness;
        axioms.push_back(std::move(x));
    }
    j["axioms"] = axioms;
    if (const AxiomResult* f = r.first_failure()) j["first_failure"] = f->name;
    return j;
}

PresentedAlgebra presentation_from_json(const Json& j) {
    check_header(j, "presentation");
    auto gens = get_as<std::vector<std::string>>(j, "generators");
    if (gens.empty()) fail("a presentation needs generators");
    int n = j.contains("N") ? read_order(j) : 1;
    int degree = j.contains("completion_degree") ? get_as<int>(j, "completion_degree") : 6;
    try {
        RewriteSystem r(gens, CoefficientAlgebra::trivial(static_cast<int>(gens.size())));
        const Json& rels = field(j, "relations");
        if (!rels.is_array()) fail("relations must be a list");
        for (const auto& rel : rels) {
            if (!rel.is_array()) fail("each relation is a list of [word, coef] terms");
            Element e;
            for (const auto& t : rel) {
                if (!t.is_array() || t.size() != 2 || !t[0].is_string()) fail("each term is [word, coef]");
                e[Term{r.parse_word(t[0].get<std::string>()), 0}] += scalar(t[1], n);
            }
            std::erase_if(e, [](const auto& kv) { return kv.second.is_zero(); });
            if (!e.empty()) r.add_relation(e);
        }
        if (j.contains("basis")) {
            std::vector<Word> basis;
            for (const auto& w : get_as<std::vector<std::string>>(j, "basis")) basis.push_back(r.parse_word(w));
            r.set_basis(std::move(basis));
        }
        return structure_constants(complete_rules(std::move(r), degree));
    } catch (const FormatError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(std::string("bad presentation: ") + e.what());
    }
}

Json algebra_to_json(const PresentedAlgebra& a) {
    int n = lcm_order(order_of(a.unit), a.mult.order());
    Json j = header("algebra");
    j["dim"] = a.dim();
    j["N"] = n;
    j["labels"] = a.labels;
    j["unit"] = vector_json(a.unit, n);
    j["mult"] = tensor_json(a.mult, n);
    Json rules = Json::array();
    for (const auto& r : a.system.rules()) {
        Json rhs = Json::array();
        for (const auto& [t, c] : r.rhs) rhs.push_back(Json::array({a.system.term_label(t), c.str(n)}));
        rules.push_back(Json::array({a.system.word_label(r.lhs), rhs}));
    }
    j["rules"] = rules;
    return j;
}

Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) fail("cannot open " + p.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail("malformed JSON in " + p.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& p, const Json& j) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hopftwist
