#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "twistkit/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace twistkit;
using namespace twistkit::cli;
namespace fs = std::filesystem;

namespace
{

struct Run
{
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args)
{
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  return nlohmann::json::parse(r.out);
}

std::string slurp(const fs::path &p)
{
  std::ifstream in(p);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir
{
  fs::path path;
  TempDir()
  {
    path = fs::temp_directory_path() / ("twistkit-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name) const { return (path / name).string(); }
};

void write(const std::string &path, const std::string &text)
{
  std::ofstream(path) << text;
}

const nlohmann::json *find_entry(const nlohmann::json &report, const std::string &check, const std::string &subject)
{
  for (const auto &e : report["entries"])
    if (e["check"] == check && e["subject"].get<std::string>().find(subject) != std::string::npos)
      return &e;
  return nullptr;
}

} // namespace

TEST_CASE("parameter parsing")
{
  const Params expected{1, 1, GaussianRational::i()};
  CHECK(parse_params("γ=1,δ=1,μ=i") == expected);
  CHECK(parse_params("mu=i, gamma=1, delta=1") == expected);
  CHECK(parse_params("1,1,i") == expected);
  CHECK(parse_params("-1+3/2i,2,1/2") ==
        Params{GaussianRational(Rational(-1), Rational(3, 2)), 2, GaussianRational(Rational(1, 2))});
  CHECK_THROWS_AS(parse_params("1,1"), UsageError);
  CHECK_THROWS_AS(parse_params("γ=1,δ=1"), UsageError);
  CHECK_THROWS_AS(parse_params("γ=1,γ=2,δ=1,μ=1"), UsageError);
  CHECK_THROWS_AS(parse_params("γ=1,δ=0,μ=1"), UsageError);
  CHECK_THROWS_AS(parse_params("γ=1,δ=1/0,μ=1"), UsageError);
  CHECK_THROWS_AS(parse_params("x=1,δ=1,μ=1"), UsageError);
}

TEST_CASE("parameter sets")
{
  const auto paper = paper_parameter_sets();
  REQUIRE(paper.size() == 4);
  const GaussianRational I = GaussianRational::i();
  CHECK(paper[0].params == Params{-2, 1, I});
  CHECK(paper[1].params == Params{-2, I, I});
  CHECK(paper[2].params == Params{-1, 2, -2});
  CHECK(paper[3].params == Params{2 * I, 1, I});

  const auto a = random_parameter_sets(0, 5);
  const auto b = random_parameter_sets(0, 5);
  const auto c = random_parameter_sets(1, 5);
  REQUIRE(a.size() == 5);
  CHECK(random_parameter_sets(0, 0).empty());
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k)
  {
    CHECK(a[k].params == b[k].params);
    CHECK_FALSE(a[k].params.gamma.is_zero());
    CHECK_FALSE(a[k].params.delta.is_zero());
    CHECK_FALSE(a[k].params.mu.is_zero());
    differs = differs || !(a[k].params == c[k].params);
  }
  CHECK(differs);
  // a longer run extends a shorter one
  CHECK(random_parameter_sets(0, 7)[4].params == a[4].params);
}

TEST_CASE("verify examples")
{
  SUBCASE("cocycle on L")
  {
    const auto r = run({"verify", "--suite", "cocycle", "--family", "F", "--params", "γ=1,δ=1,μ=i", "--order", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("1 checks: 1 pass") != std::string::npos);
  }
  SUBCASE("verbatim Schrödinger recipe")
  {
    const auto r = run({"verify", "--suite", "embedding", "--target", "schrodinger", "--n", "2", "--verbatim"});
    CHECK(r.code == 1);
    CHECK(r.out.find("failed relations: [H,E], [H,A], [H,B]") != std::string::npos);
    CHECK(run({"verify", "--suite", "embedding", "--target", "schrodinger", "--n", "2"}).code == 0);
  }
  SUBCASE("Poincaré")
  {
    const auto report = run_json({"verify", "--suite", "all", "--target", "poincare"});
    CHECK(report["exit_code"] == 0);
    CHECK(report["summary"]["fail"] == 0);
    const auto *e = find_entry(report, "rmatrix-pushforward", "F -> poincare");
    REQUIRE(e);
    CHECK((*e)["status"] == "pass");
    const auto *t = find_entry(report, "rmatrix-pushforward", "Ftilde -> poincare");
    REQUIRE(t);
    CHECK((*t)["status"] == "pass");
    // the target fixes the parameters to its own values
    REQUIRE(report["parameter_sets"].size() == 1);
    CHECK(report["parameter_sets"][0]["gamma"] == "2i");
  }
  SUBCASE("isu verbatim partner index")
  {
    CHECK(run({"verify", "--suite", "embedding", "--target", "isu", "--n", "4", "--verbatim"}).code == 1);
    CHECK(run({"verify", "--suite", "embedding", "--target", "isu", "--n", "5", "--verbatim"}).code == 0);
    CHECK(run({"verify", "--suite", "embedding", "--target", "isu"}).code == 0);
  }
}

TEST_CASE("coproduct ledger and strict mode")
{
  const std::vector<std::string> args{"verify", "--suite", "coproducts", "--params", "2,3,5"};
  const auto report = run_json(args);
  CHECK(report["exit_code"] == 0);
  CHECK(report["summary"]["recorded-mismatch"] == 2);

  const auto *h = find_entry(report, "coproduct", "F on L: Δ(H)");
  REQUIRE(h);
  CHECK((*h)["status"] == "recorded-mismatch");
  CHECK((*h)["residual"] != "0");
  const std::string hl = (*h)["ledger"].dump();
  CHECK(hl.find("(δ-1)") != std::string::npos);
  CHECK(hl.find("-δ J⊗e^{-μρ}Be^{-2δσ}") != std::string::npos);

  const auto *a = find_entry(report, "coproduct", "Ftilde on L: Δ(A)");
  REQUIRE(a);
  CHECK((*a)["status"] == "recorded-mismatch");
  const std::string al = (*a)["ledger"].dump();
  CHECK(al.find("e^{-σμ}") != std::string::npos);
  CHECK(al.find("Je^{-δσ}") != std::string::npos);

  for (const char *omitted : {"Ftilde on L: Δ(H)", "Fprime on Lprime: Δ(H)"})
  {
    const auto *e = find_entry(report, "coproduct", omitted);
    REQUIRE(e);
    CHECK((*e)["status"] == "vacuous");
    CHECK((*e)["value"] != "");
  }

  auto strict = args;
  strict.push_back("--strict-paper");
  const auto sr = run_json(strict);
  CHECK(sr["exit_code"] == 1);
  CHECK(sr["summary"]["recorded-mismatch"] == 0);
  CHECK(sr["summary"]["fail"] == 2);

  // at δ = 1 the printed Δ_F(H) holds verbatim
  const auto unit = run_json({"verify", "--suite", "coproducts", "--family", "F", "--params", "2,1,5"});
  CHECK(unit["summary"]["recorded-mismatch"] == 0);
}

TEST_CASE("show examples")
{
  SUBCASE("coproduct of E under F_P")
  {
    const auto r = run({"show", "coproduct", "--family", "FP", "--generator", "E"});
    CHECK(r.code == 0);
    CHECK(r.out.find("E⊗e^{δσ} + 1⊗E  [matches]") != std::string::npos);
    CHECK(r.out.find("Δ(H)") == std::string::npos);
  }
  SUBCASE("omitted coproducts are computed")
  {
    for (const char *f : {"Ftilde", "Fprime"})
    {
      const auto r = run({"show", "coproduct", "--family", f, "--generator", "H", "--order", "3"});
      CHECK(r.code == 0);
      CHECK(r.out.find("no closed form published") != std::string::npos);
    }
  }
  SUBCASE("r-matrix of the tilde twist")
  {
    const auto r = run({"show", "rmatrix", "--family", "Ftilde"});
    CHECK(r.code == 0);
    CHECK(r.out.find("published: -J∧B + A∧B + (γ/δ)H∧E") != std::string::npos);
    CHECK(r.out.find("r = -1 · J∧B + 2/3 · H∧E + 1 · A∧B") != std::string::npos);
    CHECK(r.out.find("matches published: yes") != std::string::npos);
    const auto j = run_json({"show", "rmatrix", "--family", "Ftilde"});
    CHECK(j["r"][0]["pair"] == nlohmann::json::array({"J", "B"}));
    CHECK(j["r"][0]["coef"] == "-1");
  }
  SUBCASE("Poincaré pushforward")
  {
    const auto j = run_json({"show", "rmatrix", "--family", "F", "--target", "poincare"});
    CHECK(j["matches_published"] == true);
    CHECK(j["cybe_residual"] == "0");
  }
  SUBCASE("Poincaré algebra")
  {
    const auto r = run({"show", "algebra", "--family", "poincare"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("poincare: 10 generators", 0) == 0);
    CHECK(r.out.find("[J_1,J_2] = ") != std::string::npos);
  }
  SUBCASE("twist factors")
  {
    const auto j = run_json({"show", "twist", "--family", "F", "--order", "2"});
    REQUIRE(j["factors"].size() == 3);
    CHECK(j["factors"][0]["name"] == "Phi");
    CHECK(j.contains("rho"));
  }
  SUBCASE("embedding")
  {
    const auto r = run({"show", "embedding", "--target", "iso", "--n", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all hold") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with 2")
{
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"verify", "--order", "7"}).code == 2);
  CHECK(run({"verify", "--order", "-1"}).code == 2);
  CHECK(run({"verify", "--trials", "-1"}).code == 2);
  CHECK(run({"verify", "--params", "1,0,1"}).code == 2);
  CHECK(run({"verify", "--family", "G"}).code == 2);
  CHECK(run({"verify", "--target", "sl2"}).code == 2);
  CHECK(run({"verify", "--algebra", "Lc", "--family", "F"}).code == 2);
  CHECK(run({"verify", "--algebra-file", "/nonexistent/alg.json"}).code == 2);
  CHECK(run({"verify", "--format", "xml"}).code == 2);
  CHECK(run({"show", "rmatrix"}).code == 2);
  CHECK(run({"show", "rmatrix", "--family", "Phi_j"}).code == 2);
  CHECK(run({"show", "coproduct", "--family", "F", "--generator", "Q"}).code == 2);
  CHECK(run({"show", "banana"}).code == 2);
  CHECK(run({"export", "embedding"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  const auto bad = run({"verify", "--params", "1,1/0,1"});
  CHECK(bad.err.find("offset") != std::string::npos);
}

TEST_CASE("reports are deterministic")
{
  const std::vector<std::string> args{"verify", "--suite", "cocycle", "--trials", "2", "--seed", "11",
                                      "--order", "2", "--format", "json"};
  auto a = args;
  a.insert(a.end(), {"--jobs", "1"});
  auto b = args;
  b.insert(b.end(), {"--jobs", "4"});
  const auto ra = run(a);
  const auto rb = run(b);
  CHECK(ra.code == 0);
  CHECK(ra.out == rb.out);
  const auto report = nlohmann::json::parse(ra.out);
  CHECK(report["parameter_sets"].size() == 6);
  CHECK(report["parameter_sets"][4]["label"] == "random-1");
  CHECK_FALSE(report["entries"][0].contains("seconds"));

  auto other = args;
  other[6] = "12";
  CHECK(run(other).out != ra.out);
}

TEST_CASE("JSON documents")
{
  SUBCASE("algebras round-trip")
  {
    std::vector<LieAlgebra> algs;
    for (auto f : {AbstractFamily::Lc, AbstractFamily::Lcd, AbstractFamily::L, AbstractFamily::Lprime})
      algs.push_back(build_abstract(f, Params{GaussianRational(Rational(2, 3), Rational(-1)), 3, 5}));
    algs.push_back(build_concrete(ConcreteFamily::isu, 4));
    algs.push_back(build_concrete(ConcreteFamily::iso, 5));
    algs.push_back(build_concrete(ConcreteFamily::schrodinger, 3));
    algs.push_back(build_concrete(ConcreteFamily::poincare, 0));
    for (const auto &alg : algs)
    {
      CAPTURE(alg.name());
      const auto doc = algebra_to_json(alg);
      const auto back = algebra_from_json(nlohmann::json::parse(doc.dump()));
      CHECK(back == alg);
    }
  }
  SUBCASE("embeddings round-trip")
  {
    for (const auto &rec : {build_embedding(ConcreteFamily::poincare, 0), build_embedding(ConcreteFamily::isu, 5),
                            build_embedding(ConcreteFamily::schrodinger, 2, {}, {}, RecipeVariant::verbatim)})
    {
      CAPTURE(rec.label);
      const auto back = embedding_from_json(nlohmann::json::parse(embedding_to_json(rec).dump()));
      CHECK(back.label == rec.label);
      CHECK(back.params == rec.params);
      CHECK(back.images == rec.images);
      CHECK(back.source == rec.source);
      CHECK(back.target == rec.target);
      CHECK(embedding_check(back).failed_relations() == embedding_check(rec).failed_relations());
    }
  }
  SUBCASE("r-matrices")
  {
    const auto alg = build_abstract(AbstractFamily::L, Params{2, 3, 5});
    const auto c = Carrier::create(AbstractFamily::L, Params{2, 3, 5}, 1);
    const auto r = reference_r(TwistFamily::Ftilde, *c);
    const auto doc = classical_r_to_json(r);
    CHECK(doc.dump() == R"([{"pair":["J","B"],"coef":"-1"},{"pair":["H","E"],"coef":"2/3"},)"
                        R"({"pair":["A","B"],"coef":"1"}])");
    CHECK(classical_r_from_json(alg, nlohmann::json::parse(doc.dump())) == r);
  }
  SUBCASE("malformed documents")
  {
    using nlohmann::json;
    CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"generators": []})")), DocumentError);
    CHECK_THROWS_AS(algebra_from_json(json::parse(R"({"name": "x", "generators": []})")), DocumentError);
    CHECK_THROWS_AS(
        algebra_from_json(json::parse(R"({"name": "x", "generators": [{"symbol": "a"}, {"symbol": "a"}]})")),
        DocumentError);
    CHECK_THROWS_AS(algebra_from_json(json::parse(
                        R"({"name": "x", "generators": [{"symbol": "a"}, {"symbol": "b"}],
                            "brackets": [{"lhs": ["a", "c"], "rhs": []}]})")),
                    DocumentError);
    CHECK_THROWS_AS(algebra_from_json(json::parse(
                        R"({"name": "x", "generators": [{"symbol": "a"}, {"symbol": "b"}],
                            "brackets": [{"lhs": ["a", "b"], "rhs": [{"coef": "1/0", "gen": "a"}]}]})")),
                    DocumentError);
    // [a,b] = a is not homogeneous when a has degree 1
    CHECK_THROWS_AS(algebra_from_json(json::parse(
                        R"({"name": "x", "generators": [{"symbol": "a", "zdegree": 1}, {"symbol": "b", "zdegree": 1}],
                            "brackets": [{"lhs": ["a", "b"], "rhs": [{"coef": "1", "gen": "a"}]}]})")),
                    DocumentError);
  }
}

TEST_CASE("file ingestion")
{
  TempDir tmp;
  SUBCASE("carrier algebra from a file")
  {
    const auto path = tmp.file("l.json");
    const Params p{-2, 1, GaussianRational::i()};
    write(path, algebra_to_json(build_abstract(AbstractFamily::L, p)).dump());
    const auto report = run_json({"verify", "--suite", "cocycle", "--algebra-file", path, "--order", "3"});
    CHECK(report["exit_code"] == 0);
    REQUIRE(report["parameter_sets"].size() == 1);
    CHECK(report["parameter_sets"][0]["label"] == "file");
    CHECK(report["parameter_sets"][0]["mu"] == "i");
    // FP, F and Ftilde can be built on L; the primed twists cannot
    CHECK(report["summary"]["pass"] == 3);
    CHECK(run({"verify", "--algebra-file", path, "--params", "1,1,1"}).code == 2);
  }
  SUBCASE("Jacobi on a user algebra")
  {
    const auto good = tmp.file("so3.json");
    write(good, R"({"name": "so3", "generators": [{"symbol": "x"}, {"symbol": "y"}, {"symbol": "z"}],
                    "brackets": [{"lhs": ["x", "y"], "rhs": [{"coef": "1", "gen": "z"}]},
                                 {"lhs": ["y", "z"], "rhs": [{"coef": "1", "gen": "x"}]},
                                 {"lhs": ["z", "x"], "rhs": [{"coef": "1", "gen": "y"}]}]})");
    CHECK(run({"verify", "--suite", "jacobi", "--algebra-file", good}).code == 0);
    const auto bad = tmp.file("bad.json");
    write(bad, R"({"name": "bad", "generators": [{"symbol": "x"}, {"symbol": "y"}, {"symbol": "z"}],
                   "brackets": [{"lhs": ["x", "y"], "rhs": [{"coef": "1", "gen": "x"}]},
                                {"lhs": ["x", "z"], "rhs": [{"coef": "1", "gen": "x"}]},
                                {"lhs": ["y", "z"], "rhs": [{"coef": "1", "gen": "y"}]}]})");
    const auto r = run({"verify", "--suite", "jacobi", "--algebra-file", bad});
    CHECK(r.code == 1);
    CHECK(r.out.find("[x,y,z]") != std::string::npos);
    const auto broken = tmp.file("broken.json");
    write(broken, "{ not json");
    CHECK(run({"verify", "--suite", "jacobi", "--algebra-file", broken}).code == 2);
  }
  SUBCASE("export and re-import an embedding")
  {
    const auto path = tmp.file("iso4.json");
    CHECK(run({"export", "embedding", "--target", "iso", "--n", "4", "-o", path}).code == 0);
    const auto r = run_json({"verify", "--suite", "embedding", "--embedding-file", path});
    CHECK(r["exit_code"] == 0);
    REQUIRE(r["entries"].size() == 1);
    CHECK(r["entries"][0]["subject"] == "iso(4)");

    const auto verbatim = tmp.file("sch.json");
    CHECK(run({"export", "embedding", "--target", "schrodinger", "--verbatim", "-o", verbatim}).code == 0);
    CHECK(run({"verify", "--suite", "embedding", "--embedding-file", verbatim}).code == 1);
  }
  SUBCASE("export algebra and r-matrix to standard output")
  {
    const auto alg = nlohmann::json::parse(run({"export", "algebra", "--algebra", "Lprime"}).out);
    CHECK(alg["name"] == "Lprime");
    CHECK(alg["generators"].size() == 5);
    const auto r = nlohmann::json::parse(run({"export", "rmatrix", "--family", "Fprime"}).out);
    CHECK(r.size() == 3);
  }
}

TEST_CASE("golden files")
{
  const fs::path golden = fs::path(TWISTKIT_SOURCE_DIR) / "golden";
  for (const char *f : {"FP", "FPprime", "F", "Ftilde", "Fprime", "Ftildeprime"})
  {
    CAPTURE(f);
    const auto r = run({"show", "coproduct", "--family", f, "--params", "2,3,5", "--order", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == slurp(golden / "coproducts" / (std::string(f) + ".txt")));
  }
  CHECK(run({"verify", "--suite", "coproducts", "--params", "2,3,5", "--format", "json"}).out ==
        slurp(golden / "report_coproducts.json"));
  CHECK(run({"verify", "--suite", "rmatrix", "--params", "2,3,5", "--format", "json"}).out ==
        slurp(golden / "report_rmatrix.json"));
}
