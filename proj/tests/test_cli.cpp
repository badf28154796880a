#include "doctest.h"

#include "hopftwist/catalog.hpp"
#include "hopftwist/serialize.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hopftwist;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

fs::path workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("hopftwist_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

fs::path file(const std::string& name) { return workdir() / name; }

Run cli(const std::string& args, const std::string& env = "") {
    fs::path out = file("stdout.txt"), err = file("stderr.txt");
    std::string cmd = "cd '" + workdir().string() + "' && " + env + (env.empty() ? "" : " ") + "'" HOPFTWIST_CLI_PATH "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_CASE("construct taft then verify comodule") {
    REQUIRE(cli("construct taft --n 3 --a 1 --b 2/3 --out w.json").code == 0);
    CHECK(fs::exists(file("w.parent.json")));
    Json w = read_json_file(file("w.json"));
    CHECK(w["parent_hopf"] == "w.parent.json");
    CHECK(w["dim"] == 9);
    CHECK(w.contains("inverse_galois"));
    Run v = cli("verify comodule w.json");
    CHECK(v.code == 0);
    CHECK(parse(v.out)["ok"] == true);
    CHECK(cli("verify identities w.json").code == 0);
}

TEST_CASE("taft without deformation parameters is the Hopf algebra") {
    REQUIRE(cli("construct taft --n 2 --out h2.json").code == 0);
    HopfAlgebraData h = hopf_from_json(read_json_file(file("h2.json")));
    CHECK(structure_equal(h, taft_hopf(2)));
    CHECK(cli("construct taft-def --n 2 --a 1").code == 2);
}

TEST_CASE("cohomology reports") {
    Run s3 = cli("cohomology --group sym:3 --coeff 6");
    REQUIRE(s3.code == 0);
    Json j = parse(s3.out);
    CHECK(j["trivial"] == true);
    CHECK(j["invariant_factors"].empty());
    Json v4 = parse(cli("cohomology --group v4 --coeff 2").out);
    CHECK(v4["invariant_factors"] == Json::array({2}));
    CHECK(v4["representatives"].size() == 1);
    CHECK(cli("cohomology --group cyclic:5 --format table").out == "H^2 image for coefficients mu_5: trivial\n");
    CHECK(cli("cohomology --group nonsense:3").code == 2);
}

TEST_CASE("corrupted Hopf algebra names the failing axiom") {
    REQUIRE(cli("construct kg --group sym:3 --out ks3.json").code == 0);
    CHECK(cli("verify hopf ks3.json").code == 0);
    Json h = read_json_file(file("ks3.json"));
    h["mult"][0][1] = "2";
    write_json_file(file("bad.json"), h);
    Run r = cli("verify hopf bad.json");
    CHECK(r.code == 1);
    CHECK(parse(r.out)["first_failure"] == "associativity");
    CHECK(r.err.find("associativity") != std::string::npos);

    Json c = read_json_file(file("ks3.json"));
    c["counit"][1] = "0";
    write_json_file(file("bad2.json"), c);
    Run r2 = cli("verify hopf bad2.json --format table");
    CHECK(r2.code == 1);
    CHECK(r2.out.find("FAIL") != std::string::npos);
}

TEST_CASE("round trips are byte-identical") {
    REQUIRE(cli("construct kg --group sym:3 --out ks3.json").code == 0);
    std::string text = slurp(file("ks3.json"));
    HopfAlgebraData h = hopf_from_json(Json::parse(text));
    CHECK(structure_equal(h, group_algebra(symmetric_group(3))));
    CHECK(dump(hopf_to_json(h)) == text);

    REQUIRE(cli("construct taft-def --n 2 --a 2 --b 1 --out td.json").code == 0);
    std::string wtext = slurp(file("td.json"));
    Deformation w = deformation_from_json(Json::parse(wtext), workdir());
    CHECK(dump(deformation_to_json(w, "td.parent.json")) == wtext);
    Deformation ref = taft_deformation(2, 2, 1);
    CHECK(w.mult == ref.mult);
    CHECK(w.coaction == ref.coaction);
    CHECK(*w.inverse_galois == *ref.inverse_galois);
    CHECK(structure_equal(*w.parent, *ref.parent));

    Json embedded = deformation_to_json(w);
    CHECK(embedded["parent_hopf"].is_object());
    Deformation w2 = deformation_from_json(embedded, "/nonexistent");
    CHECK(w2.mult == w.mult);
}

TEST_CASE("fingerprints are deterministic across runs and worker counts") {
    REQUIRE(cli("construct kalpha-g --group v4 --cocycle v4 --out kv4.json").code == 0);
    Run a = cli("invariants kv4.json --depth 2");
    Run b = cli("invariants kv4.json --depth 2", "HOPFTWIST_JOBS=1");
    Run c = cli("--jobs 3 invariants kv4.json --depth 2");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    Fingerprint f = fingerprint_from_json(parse(a.out));
    CHECK(f.depth == 2);
    CHECK(dump(fingerprint_to_json(f)) == a.out);
}

TEST_CASE("input errors exit 2") {
    REQUIRE(cli("construct taft-def --n 2 --a 1 --b 1 --out orphan.json").code == 0);
    fs::remove(file("orphan.parent.json"));
    Run r = cli("verify comodule orphan.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("parent") != std::string::npos);

    spit(file("garbage.json"), "{ not json");
    CHECK(cli("verify hopf garbage.json").code == 2);
    CHECK(cli("verify hopf missing.json").code == 2);

    REQUIRE(cli("construct kg --group cyclic:2 --out c2.json").code == 0);
    Json h = read_json_file(file("c2.json"));
    h["schema"] = "hopftwist/0";
    write_json_file(file("old.json"), h);
    CHECK(cli("verify hopf old.json").code == 2);
    h = read_json_file(file("c2.json"));
    h["mult"][0][0] = Json::array({0, 1});
    write_json_file(file("shape.json"), h);
    Run s = cli("verify hopf shape.json");
    CHECK(s.code == 2);
    CHECK(s.err.find("shape") != std::string::npos);

    CHECK(cli("verify hopf c2.json --bogus").code == 2);
    CHECK(cli("construct kg --group v4 --mu 1").code == 2);
    CHECK(cli("construct nosuch").code == 2);
    CHECK(cli("construct dual-group-def --group v4 --subgroup 0,1,2 --cocycle v4").code == 2);
    CHECK(cli("construct taft-def --n 2 --a 0 --b 1").code == 2);
    CHECK(cli("construct taft-def --n 2 --a 1 --b 1/0").code == 2);
    CHECK(cli("").code == 2);
}

TEST_CASE("compare exits 3 on distinct fingerprints") {
    REQUIRE(cli("construct taft-def --n 2 --a 1 --b 0 --out b0.json").code == 0);
    REQUIRE(cli("construct taft-def --n 2 --a 1 --b 1 --out b1.json").code == 0);
    REQUIRE(cli("construct taft-def --n 2 --a 2 --b 1 --out b1a2.json").code == 0);
    Run d = cli("compare b0.json b1.json --depth 2");
    CHECK(d.code == 3);
    CHECK(parse(d.out)["verdict"] == "distinct");
    CHECK(cli("compare b1.json b1a2.json --depth 2").code == 0);

    REQUIRE(cli("invariants b0.json --depth 2 --out fb0.json").code == 0);
    CHECK(cli("compare fb0.json b1.json --depth 2").code == 3);
    CHECK(cli("compare fb0.json b0.json --depth 2").code == 0);
    CHECK(cli("compare fb0.json b0.json --depth 1").code == 2);
}

TEST_CASE("galois twist matches the conjugated fingerprint") {
    REQUIRE(cli("construct dual-group-def --group \"prod(cyclic:3,cyclic:3)\" --cocycle z3z3 --out z.json").code == 0);
    REQUIRE(cli("galois z.json --j 2 --out zg.json").code == 0);
    Run fw = cli("invariants z.json --depth 1");
    Run fg = cli("invariants zg.json --depth 1");
    REQUIRE(fw.code == 0);
    REQUIRE(fg.code == 0);
    Fingerprint a = fingerprint_from_json(parse(fw.out)), b = fingerprint_from_json(parse(fg.out));
    CHECK(compare_fingerprints(galois_apply(a, 2), b) == Verdict::indistinguishable);
    CHECK(compare_fingerprints(a, b) == Verdict::distinct);
    CHECK(cli("galois z.json --j 3").code == 2);
}

TEST_CASE("double twist and cocycle verification") {
    Run l = cli("double-twist --cocycle v4-nondeg --out l.json");
    REQUIRE(l.code == 0);
    CHECK(cli("verify hopf l.json").code == 0);
    CHECK(structure_equal(hopf_from_json(read_json_file(file("l.json"))), group_algebra(klein_four())));
    REQUIRE(cli("construct taft-def --n 2 --a 1 --b 1 --out dt.json").code == 0);
    CHECK(cli("double-twist dt.json --out l2.json").code == 0);
    CHECK(hopf_from_json(read_json_file(file("l2.json"))).dim == 4);
    CHECK(cli("double-twist").code == 2);

    CHECK(cli("verify cocycle v4-nondeg").code == 0);
    Json c = cocycle_to_json(v4_nondegenerate_cocycle(), "v4");
    c["exponents"][1][2] = 1 - c["exponents"][1][2].get<int>();
    write_json_file(file("badc.json"), c);
    Run r = cli("verify cocycle badc.json");
    CHECK(r.code == 1);
    CHECK(parse(r.out)["first_failure"] == "group cocycle identity");
}

TEST_CASE("construct from a presentation") {
    spit(file("qp.json"), R"({
  "schema": "hopftwist/1",
  "kind": "presentation",
  "N": 3,
  "generators": ["x", "y"],
  "relations": [[["y x", "1"], ["x y", "-z"]], [["x x x", "1"]], [["y y y", "1"], ["", "-1"]]],
  "completion_degree": 6
})");
    Run r = cli("construct from-presentation qp.json");
    REQUIRE(r.code == 0);
    Json a = parse(r.out);
    CHECK(a["dim"] == 9);
    CHECK(a["labels"][8] == "xxyy");
    spit(file("qp_bad.json"), R"({"schema": "hopftwist/1", "kind": "presentation", "generators": ["x"], "relations": [[["x q", "1"]]]})");
    CHECK(cli("construct from-presentation qp_bad.json").code == 2);
}

TEST_CASE("curated spec lists") {
    REQUIRE(cli("construct taft-def --n 2 --a 1 --b 1 --out sp.json").code == 0);
    HopfAlgebraData h = taft_hopf(2);
    spit(file("specs.json"), R"({"specs": [{"l": 1, "sigma": [2, 1], "f": ")" + h.labels[1] + R"(", "hs": [")" + h.labels[2] + R"("]}]})");
    Run r = cli("invariants sp.json --specs specs.json");
    REQUIRE(r.code == 0);
    Deformation w = taft_deformation(2, 1, 1);
    CycloNum v = basic_invariant(w, InvariantSpec{1, Permutation({2, 1}), 1, {2}});
    Json j = parse(r.out);
    if (v.is_zero()) {
        CHECK(j["entries"].empty());
    } else {
        REQUIRE(j["entries"].size() == 1);
        CHECK(CycloNum::parse(j["entries"][0]["value"].get<std::string>(), j["N"].get<int>()) == v);
    }
    spit(file("specs_bad.json"), R"([{"l": 1, "sigma": [2, 1], "f": "nope", "hs": ["1"]}])");
    CHECK(cli("invariants sp.json --specs specs_bad.json").code == 2);
    spit(file("specs_len.json"), R"([{"l": 1, "sigma": [1], "f": ")" + h.labels[0] + R"(", "hs": [")" + h.labels[0] + R"("]}])");
    CHECK(cli("invariants sp.json --specs specs_len.json").code == 2);
}

TEST_CASE("rationality report") {
    REQUIRE(cli("construct dual-group-def --group \"prod(cyclic:3,cyclic:3)\" --cocycle z3z3 --out zr.json").code == 0);
    Run r = cli("invariants zr.json --depth 1 --rationality");
    REQUIRE(r.code == 0);
    Json j = parse(r.out);
    CHECK(j["rationality"]["nonzero"] == j["entries"].size());
    CHECK(j["rationality"]["rational"].get<std::size_t>() + j["rationality"]["irrational"].size() == j["entries"].size());
}
