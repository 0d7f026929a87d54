#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "cli/commands.hpp"
#include "cli/serialize.hpp"
#include "simgroup/diagram.hpp"
#include "simgroup/error.hpp"

using namespace simgroup;
using namespace simgroup::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// A scratch directory removed at the end of each test.
class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("simgroup_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& contents) {
    fs::path p = dir_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<GroupPtr> groups(int d) {
  if (d > 5) {
    // Keep the groups small for large d: trivial, a transposition, a rotation of 1..4.
    std::vector<Perm> swap{parse_cycles("(1 2)", d)};
    std::vector<Perm> rot{parse_cycles("(1 2 3 4)", d)};
    return {share_group(PermGroup::trivial(d)), share_group(PermGroup::closure(d, swap)),
            share_group(PermGroup::closure(d, rot))};
  }
  return {share_group(PermGroup::trivial(d)), share_group(PermGroup::symmetric(d)), share_group(PermGroup::alternating(d))};
}

}  // namespace

TEST(Serialize, CycleParsing) {
  EXPECT_EQ(parse_cycles("(1 2)(3 4)", 4), Perm::from_images({2, 1, 4, 3}));
  EXPECT_EQ(parse_cycles("(1,2,3)", 3), Perm::from_images({2, 3, 1}));
  EXPECT_EQ(parse_cycles("()", 3), Perm::identity(3));
  EXPECT_EQ(parse_cycles("", 3), Perm::identity(3));
  EXPECT_THROW(parse_cycles("(1 5)", 3), InputError);
  EXPECT_THROW(parse_cycles("(1 2", 3), InputError);
  EXPECT_THROW(parse_cycles("(1 1)", 3), InputError);
  EXPECT_EQ(parse_group("sym", 4).order(), 24u);
  EXPECT_EQ(parse_group("alt", 5).order(), 60u);
  EXPECT_EQ(parse_group("trivial", 3).order(), 1u);
  EXPECT_EQ(parse_group("(3 4)", 4).order(), 2u);
  EXPECT_EQ(parse_group("(1 2)(3 4),(1 3)(2 4)", 4).order(), 4u);
  EXPECT_EQ(parse_group("(1 2 3 4),(1 2)", 4).order(), 24u);
}

TEST(Serialize, PointParsing) {
  auto p = parse_point("ε:12", 2);
  ASSERT_TRUE(std::holds_alternative<EventuallyPeriodicPoint>(p));
  EXPECT_TRUE(std::get<EventuallyPeriodicPoint>(p).preperiod.empty());
  EXPECT_EQ(std::get<EventuallyPeriodicPoint>(p).period, Word::parse("12"));
  EXPECT_EQ(std::get<EventuallyPeriodicPoint>(parse_point(":1", 2)).period, Word::parse("1"));
  auto q = parse_point("symbols:{1,2}", 3);
  ASSERT_TRUE(std::holds_alternative<std::vector<int>>(q));
  EXPECT_EQ(std::get<std::vector<int>>(q), (std::vector<int>{1, 2}));
  EXPECT_THROW(parse_point("12", 2), InputError);
  EXPECT_THROW(parse_point("1:", 2), InputError);
  EXPECT_THROW(parse_point("1:3", 2), InputError);
  EXPECT_THROW(parse_point("symbols:{}", 2), InputError);
}

TEST(Serialize, ElementRoundTrip) {
  std::mt19937_64 rng(2024);
  std::size_t done = 0;
  for (int d : {2, 3, 4, 11}) {
    for (const GroupPtr& H : groups(d)) {
      for (int i = 0; i < 84; ++i) {
        TableElement g = random_table(d, H, 9, rng);
        json j = element_to_json(g);
        TableElement back = element_from_json(parse_json(j.dump(), "memory"));
        ASSERT_EQ(back, g);
        EXPECT_EQ(element_to_json(back).dump(), j.dump());
        ++done;
      }
    }
  }
  EXPECT_GE(done, 1000u);
}

TEST(Serialize, WordsAboveNineUseCommas) {
  Word x{10, 1, 12};
  json j = word_to_json(x, 12);
  EXPECT_EQ(j.get<std::string>(), "10,1,12");
  EXPECT_EQ(word_from_json(j, 12), x);
  EXPECT_EQ(word_to_json(Word::parse("121"), 2).get<std::string>(), "121");
  EXPECT_THROW(word_from_json(json("13"), 2), InputError);
}

TEST(Serialize, PermAndPointRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    int d = 2 + static_cast<int>(rng() % 6);
    const PermGroup sym = PermGroup::symmetric(d);
    Perm p = sym.elements()[rng() % sym.order()];
    EXPECT_EQ(perm_from_json(perm_to_json(p), d), p);
    EXPECT_EQ(parse_cycles(p.to_cycle_string(), d), p);

    Word u;
    Word v;
    for (std::size_t k = rng() % 3; k > 0; --k) u.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d)));
    for (std::size_t k = 1 + rng() % 3; k > 0; --k) v.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d)));
    PointSpec pt = EventuallyPeriodicPoint{u, v};
    EXPECT_EQ(parse_point(point_to_string(pt), d), pt);
  }
}

TEST(Serialize, DiagramRoundTrip) {
  SemigroupPresentation p = SemigroupPresentation::parse("x = x x");
  auto s = make_vdh_structure(2, PermGroup::trivial(2));
  GroupPtr H = share_group(PermGroup::trivial(2));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    BraidedDiagram dg = triple_to_diagram(*s, triple_from_table(random_table(2, H, 7, rng)));
    if (i % 2 == 1) dg = reduce(dg);
    json j = diagram_to_json(dg, p);
    ASSERT_EQ(diagram_from_json(parse_json(j.dump(), "memory"), p), dg);
  }
}

TEST(Serialize, JsonErrorsCarryPosition) {
  try {
    parse_json("{\n  \"d\": 2,\n  oops\n}", "bad.json");
    FAIL() << "no error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:3:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(element_from_json(json::parse(R"({"d": 2, "H": [], "columns": [{"v": "1", "h": [1, 2], "u": "1"}]})")),
               InputError);
  EXPECT_THROW(element_from_json(json::parse(R"({"d": 2, "H": [[2, 1]]})")), InputError);
}

TEST_F(Cli, MulWithInverseIsIdentity) {
  auto H = share_group(PermGroup::symmetric(3));
  std::mt19937_64 rng(5);
  TableElement g = random_table(3, H, 7, rng);
  std::string a = file("g.json", element_to_json(g).dump());
  Result inv = run_cli({"element", "inv", "-i", a});
  ASSERT_EQ(inv.code, 0) << inv.err;
  std::string b = file("ginv.json", inv.out);
  Result prod = run_cli({"element", "mul", "-i", a, "-i", b});
  ASSERT_EQ(prod.code, 0) << prod.err;
  TableElement id = element_from_json(json::parse(prod.out));
  EXPECT_EQ(id.size(), 1u);
  EXPECT_EQ(id, TableElement::identity(3, H));
}

TEST_F(Cli, MulOrder) {
  auto H = share_group(PermGroup::trivial(2));
  std::mt19937_64 rng(6);
  TableElement g1 = random_table(2, H, 5, rng);
  TableElement g2 = random_table(2, H, 5, rng);
  Result r = run_cli({"element", "mul", "-i", file("a.json", element_to_json(g1).dump()), "-i",
                      file("b.json", element_to_json(g2).dump())});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(element_from_json(json::parse(r.out)), compose(g1, g2).table());
}

TEST_F(Cli, ParityOfBlockTransposition) {
  // d=3: swap the balls 1 and 2, fix 3.
  std::string g = file("t.json", R"({"d": 3, "H": [], "columns": [
      {"v": "1", "h": [1, 2, 3], "u": "2"}, {"v": "2", "h": [1, 2, 3], "u": "1"}, {"v": "3", "h": [1, 2, 3], "u": "3"}]})");
  Result r = run_cli({"element", "parity", "-i", g});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["parity"], "odd");
}

TEST_F(Cli, ApplyNeedsDepth) {
  std::string g = file("t.json", R"({"d": 2, "H": [], "columns": [
      {"v": "1", "h": [1, 2], "u": "11"}, {"v": "21", "h": [1, 2], "u": "12"}, {"v": "22", "h": [1, 2], "u": "2"}]})");
  Result ok = run_cli({"element", "apply", "-i", g, "-w", "21"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(json::parse(ok.out)["word"], "12");
  Result shallow = run_cli({"element", "apply", "-i", g, "-w", "2"});
  EXPECT_EQ(shallow.code, kContractError);
  EXPECT_NE(shallow.err.find("insufficient depth"), std::string::npos);
}

TEST_F(Cli, TransporterAndLambda) {
  Result t = run_cli({"element", "transporter", "--d", "2", "--from", "1", "--to", "21"});
  ASSERT_EQ(t.code, 0) << t.err;
  TableElement g = element_from_json(json::parse(t.out));
  EXPECT_EQ(apply_prefix(g, Word::parse("1122")), Word::parse("21122"));

  std::string sw = file("s.json", R"({"d": 2, "H": [[2, 1]], "columns": [{"v": "", "h": [2, 1], "u": ""}]})");
  Result l = run_cli({"element", "lambda", "-i", sw, "-w", "1"});
  ASSERT_EQ(l.code, 0) << l.err;
  TableElement lg = element_from_json(json::parse(l.out));
  EXPECT_EQ(apply_prefix(lg, Word::parse("112")), Word::parse("121"));
  EXPECT_EQ(apply_prefix(lg, Word::parse("21")), Word::parse("21"));
}

TEST_F(Cli, GermReports) {
  Result s4 = run_cli({"germ", "--d", "4", "--H", "sym", "--point", "ε:12"});
  ASSERT_EQ(s4.code, 0) << s4.err;
  json j = json::parse(s4.out);
  EXPECT_EQ(j["structure"], "Hx⊕Z");
  EXPECT_EQ(j["Hx_order"], 2);
  EXPECT_EQ(j["Hx_generators"], json::array({"(3 4)"}));

  Result a5 = run_cli({"germ", "--d", "5", "--H", "alt", "--point", "ε:12"});
  ASSERT_EQ(a5.code, 0) << a5.err;
  json k = json::parse(a5.out);
  EXPECT_EQ(k["structure"], "Hx⋊Z");
  EXPECT_EQ(k["twist"], "(1 2)(3 4)");

  Result free = run_cli({"germ", "--d", "2", "--H", "trivial", "--point", "symbols:{1,2}"});
  ASSERT_EQ(free.code, 0) << free.err;
  EXPECT_EQ(json::parse(free.out)["structure"], "trivial");

  EXPECT_EQ(run_cli({"germ", "--d", "2", "--point", "banana"}).code, kInputError);
}

TEST_F(Cli, ReportExpectedLines) {
  Result simple = run_cli({"report", "simplicity", "--d", "4", "--H", "sym"});
  ASSERT_EQ(simple.code, 0) << simple.err;
  EXPECT_NE(simple.out.find("simple subgroup index: 1\n"), std::string::npos);

  Result cx = run_cli({"report", "complex", "--structure", "finite", "--n", "3", "--G", "trivial"});
  ASSERT_EQ(cx.code, 0) << cx.err;
  EXPECT_NE(cx.out.find("vertices: 7\n"), std::string::npos);

  Result fp = run_cli({"report", "fingerprint", "--d", "3", "--H", "sym", "--compare-d", "4", "--compare-H", "sym"});
  ASSERT_EQ(fp.code, 0) << fp.err;
  EXPECT_NE(fp.out.find("verdict: DISTINGUISHED\n"), std::string::npos);

  Result ab = run_cli({"report", "abelianization", "--d", "3", "--H", "sym", "--format", "json"});
  ASSERT_EQ(ab.code, 0) << ab.err;
  EXPECT_EQ(json::parse(ab.out)["invariants"], json::array({2}));

  Result rt = run_cli({"report", "diagram-roundtrip", "--count", "50", "--seed", "3"});
  ASSERT_EQ(rt.code, 0) << rt.err;
  EXPECT_NE(rt.out.find("failures: 0\n"), std::string::npos);

  Result nv = run_cli({"report", "nerve", "--height", "6"});
  ASSERT_EQ(nv.code, 0) << nv.err;
  EXPECT_NE(nv.out.find("verdict: pass\n"), std::string::npos);
}

TEST_F(Cli, ReportsAreDeterministic) {
  std::vector<std::string> args{"report", "complex", "--structure", "vdh", "--d", "2", "--depth", "2", "--format", "json"};
  Result a = run_cli(args);
  Result b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> rt{"report", "diagram-roundtrip", "--count", "20", "--seed", "9"};
  EXPECT_EQ(run_cli(rt).out, run_cli(rt).out);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, kInputError);
  EXPECT_EQ(run_cli({"nonsense"}).code, kInputError);
  EXPECT_EQ(run_cli({"element", "mul", "-i", path("missing.json"), "-i", path("missing.json")}).code, kInputError);
  EXPECT_EQ(run_cli({"element", "inv", "-i", file("bad.json", "{ not json")}).code, kInputError);
  EXPECT_EQ(run_cli({"report", "complex", "--structure", "vdh", "--d", "2", "--depth", "3", "--cap", "100"}).code,
            kCapExceeded);
  EXPECT_EQ(run_cli({"report", "nerve", "--partition", "1,21"}).code, kContractError);
  EXPECT_EQ(run_cli({"--help"}).code, kOk);

  // Elements over different groups cannot be multiplied.
  std::string a = file("a.json", R"({"d": 2, "H": [], "columns": [{"v": "", "h": [1, 2], "u": ""}]})");
  std::string b = file("b.json", R"({"d": 2, "H": [[2, 1]], "columns": [{"v": "", "h": [1, 2], "u": ""}]})");
  EXPECT_EQ(run_cli({"element", "mul", "-i", a, "-i", b}).code, kInputError);
}

TEST_F(Cli, DiagramCommands) {
  std::string ok = file("d.json", R"({"wires": ["x", "x", "x", "x"],
      "transistors": [{"top": [0], "bottom": [1, 2]}, {"top": [1, 2], "bottom": [3]}],
      "frame_top": [0], "frame_bottom": [3]})");
  Result v = run_cli({"diagram", "validate", "-i", ok});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_EQ(json::parse(v.out)["valid"], true);

  Result r = run_cli({"diagram", "reduce", "-i", ok});
  ASSERT_EQ(r.code, 0) << r.err;
  json red = json::parse(r.out);
  EXPECT_EQ(red["transistors"].size(), 0u);
  EXPECT_EQ(red["wires"].size(), 1u);

  Result o = run_cli({"diagram", "outcomes", "-i", ok});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(json::parse(o.out)["distinct outcomes"], 1);

  std::string cyc = file("c.json", R"({"wires": ["x", "x", "x", "x"],
      "transistors": [{"top": [0], "bottom": [1, 2]}, {"top": [1], "bottom": [0, 3]}],
      "frame_top": [], "frame_bottom": [2, 3]})");
  Result c = run_cli({"diagram", "validate", "-i", cyc});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["condition"], "acyclicity");
  EXPECT_EQ(run_cli({"diagram", "reduce", "-i", cyc}).code, kContractError);

  std::string pres = file("p.txt", "a = b b\nb = a a\n");
  std::string ab = file("ab.json", R"({"wires": ["a", "b", "b"], "transistors": [{"top": [0], "bottom": [1, 2]}],
      "frame_top": [0], "frame_bottom": [1, 2]})");
  Result pv = run_cli({"diagram", "validate", "-i", ab, "--presentation", pres});
  ASSERT_EQ(pv.code, 0) << pv.err;
  EXPECT_EQ(json::parse(pv.out)["valid"], true);
}

TEST_F(Cli, OutputIsWrittenAtomically) {
  std::string target = path("report.txt");
  Result r = run_cli({"report", "simplicity", "--d", "3", "--H", "sym", "-o", target});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("simple subgroup index: 2\n"), std::string::npos);

  // A failing run leaves the previous file alone and no temporaries behind.
  Result bad = run_cli({"report", "complex", "--structure", "vdh", "--depth", "3", "--cap", "10", "-o", target});
  EXPECT_EQ(bad.code, kCapExceeded);
  std::ifstream again(target);
  std::stringstream text2;
  text2 << again.rdbuf();
  EXPECT_EQ(text2.str(), text.str());
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir_)) ++entries;
  EXPECT_EQ(entries, 1u);
}
