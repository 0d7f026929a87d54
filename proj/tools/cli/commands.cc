#include "commands.hpp"

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "serialize.hpp"
#include "simgroup/abelianization.hpp"
#include "simgroup/complex.hpp"
#include "simgroup/error.hpp"
#include "simgroup/homology.hpp"

namespace simgroup::cli {

namespace {

struct Options {
  int d = 2;
  std::string H = "trivial";
  std::vector<std::string> inputs;
  std::string output;
  std::string format;
  std::string word;
  std::string from;
  std::string to;
  std::string point;
  std::size_t max_period = 3;
  int compare_d = 0;
  std::string compare_H = "sym";
  std::string structure = "finite";
  int n = 3;
  std::string G = "trivial";
  std::size_t max_height = 0;
  std::size_t depth = 1;
  std::size_t cap = 50000;
  std::string partition;
  std::size_t height = 0;
  int k = 0;
  std::size_t count = 100;
  std::size_t max_columns = 8;
  std::uint64_t seed = 1;
  std::string presentation;
};

// A report is a list of key/value lines in text mode and an object in JSON mode.
class Report {
 public:
  template <class T>
  void add(const std::string& key, const T& value) {
    json_[key] = value;
    std::ostringstream ss;
    if constexpr (std::is_same_v<T, bool>) {
      ss << (value ? "true" : "false");
    } else if constexpr (std::is_same_v<T, json>) {
      ss << value.dump();
    } else {
      ss << value;
    }
    lines_.push_back(key + ": " + ss.str());
  }
  void line(const std::string& text) { lines_.push_back(text); }

  std::string render(const std::string& format) const {
    if (format == "json") return json_.dump(2) + "\n";
    std::string out;
    for (const std::string& l : lines_) out += l + "\n";
    return out;
  }

 private:
  json json_ = json::object();
  std::vector<std::string> lines_;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_atomically(o.output, text);
  }
}

void emit_json(const Options& o, std::ostream& out, const json& j) {
  if (o.format == "text") {
    std::string s;
    for (auto it = j.begin(); it != j.end(); ++it) {
      s += it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
    emit(o, out, s);
  } else {
    emit(o, out, j.dump(2) + "\n");
  }
}

std::vector<TableElement> load_elements(const Options& o, std::size_t min, std::size_t max) {
  if (o.inputs.size() < min || o.inputs.size() > max) {
    throw InputError("expected " + (min == max ? std::to_string(min) : std::to_string(min) + " or more") +
                     " --input file(s), got " + std::to_string(o.inputs.size()));
  }
  std::vector<TableElement> out;
  for (const std::string& path : o.inputs) out.push_back(element_from_json(parse_json(read_file(path), path)));
  for (const TableElement& g : out) {
    if (g.arity() != out.front().arity() || g.group() != out.front().group()) {
      throw InputError("elements have different arity or group");
    }
  }
  return out;
}

Word parse_word(const std::string& text, int d) { return word_from_json(json(text), d); }

void cmd_element(const std::string& op, Options o, std::ostream& out) {
  if (o.format.empty()) o.format = "json";
  if (op == "transporter") {
    GroupPtr H = share_group(parse_group(o.H, o.d));
    emit_json(o, out, element_to_json(ball_transporter(o.d, H, parse_word(o.from, o.d), parse_word(o.to, o.d))));
    return;
  }
  if (op == "mul") {
    auto gs = load_elements(o, 2, static_cast<std::size_t>(-1));
    ReducedTable acc = reduce(gs.back());
    for (std::size_t i = gs.size() - 1; i-- > 0;) acc = compose(gs[i], acc);
    emit_json(o, out, element_to_json(acc));
    return;
  }
  TableElement g = load_elements(o, 1, 1).front();
  if (op == "inv") {
    emit_json(o, out, element_to_json(invert(g)));
  } else if (op == "reduce") {
    emit_json(o, out, element_to_json(reduce(g)));
  } else if (op == "parity") {
    emit_json(o, out, json{{"parity", parity(g) == Parity::odd ? "odd" : "even"}, {"in_vprime", in_vprime(g)}});
  } else if (op == "apply") {
    emit_json(o, out, json{{"word", word_to_json(apply_prefix(g, parse_word(o.word, g.arity())), g.arity())}});
  } else if (op == "lambda") {
    emit_json(o, out, element_to_json(reduce(lambda_embed(parse_word(o.word, g.arity()), g))));
  } else {
    throw InputError("unknown element operation " + op);
  }
}

void cmd_germ(Options o, std::ostream& out) {
  if (o.format.empty()) o.format = "json";
  PermGroup H = parse_group(o.H, o.d);
  PointSpec point = parse_point(o.point, o.d);
  GermDescriptor g = std::holds_alternative<EventuallyPeriodicPoint>(point)
                         ? germ_group(H, std::get<EventuallyPeriodicPoint>(point))
                         : germ_group(H, std::get<std::vector<int>>(point));
  json j = germ_to_json(g);
  j["point"] = point_to_string(point);
  emit_json(o, out, j);
}

std::string group_string(const PermGroup& G) {
  std::string s = "<";
  auto gens = G.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_cycle_string();
  return s + ">";
}

json invariants_json(const std::vector<int>& inv) { return json(inv); }

std::string invariants_string(const std::vector<int>& inv) {
  if (inv.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < inv.size(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(inv[i]);
  return s;
}

// Height-h partition of A^ω: the d-ary left comb.
std::vector<Word> comb_partition(int d, std::size_t h) {
  std::vector<Word> blocks{Word{}};
  while (blocks.size() < h) {
    Word w = blocks.front();
    blocks.erase(blocks.begin());
    std::vector<Word> kids;
    for (int j = 1; j <= d; ++j) kids.push_back(w.child(j));
    blocks.insert(blocks.begin(), kids.begin(), kids.end());
  }
  if (blocks.size() != h) throw ContractError("no comb partition of height " + std::to_string(h) + " for d=" + std::to_string(d));
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

void cmd_report(const std::string& kind, Options o, std::ostream& out) {
  if (o.format.empty()) o.format = "text";
  Report r;
  if (kind == "abelianization") {
    PermGroup H = parse_group(o.H, o.d);
    AbelianizationResult a = abelianization(o.d, H);
    r.add("d", o.d);
    r.add("H", group_string(H));
    r.add("H order", H.elements().size());
    r.add("N", group_string(abelianization_kernel(o.d, H)));
    r.add("abelianization", invariants_string(a.invariants));
    r.add("invariants", invariants_json(a.invariants));
    r.add("vprime index", a.vprime_index);
    r.add("z order", a.z_order);
  } else if (kind == "simplicity") {
    PermGroup H = parse_group(o.H, o.d);
    SimplicityReport s = simplicity_report(o.d, H);
    r.add("d", o.d);
    r.add("H", group_string(H));
    r.add("abelianization", invariants_string(s.invariants));
    r.add("vprime index", s.vprime_index);
    r.add("quotient order", s.quotient_order);
    r.add("simple subgroup index", s.simple_subgroup_index);
  } else if (kind == "fingerprint") {
    PermGroup H = parse_group(o.H, o.d);
    GermFingerprint f = germ_fingerprint(o.d, H, o.max_period);
    json labels = json::array();
    for (const GermLabel& l : f.labels) labels.push_back(l.describe());
    r.add("d", o.d);
    r.add("H", group_string(H));
    r.add("max period", o.max_period);
    r.add("labels", labels);
    if (o.compare_d > 0) {
      PermGroup H2 = parse_group(o.compare_H, o.compare_d);
      GermFingerprint f2 = germ_fingerprint(o.compare_d, H2, o.max_period);
      json labels2 = json::array();
      for (const GermLabel& l : f2.labels) labels2.push_back(l.describe());
      r.add("compare d", o.compare_d);
      r.add("compare H", group_string(H2));
      r.add("compare labels", labels2);
      r.add("verdict", std::string(f == f2 ? "NOT DISTINGUISHED" : "DISTINGUISHED"));
    }
  } else if (kind == "complex") {
    SimStructurePtr s;
    if (o.structure == "finite") {
      s = make_finite_structure(o.n, parse_group(o.G, o.n));
    } else if (o.structure == "vdh") {
      s = make_vdh_structure(o.d, parse_group(o.H, o.d));
    } else {
      throw InputError("unknown structure " + o.structure + " (expected finite or vdh)");
    }
    const std::size_t height = o.max_height ? o.max_height : (o.structure == "finite" ? static_cast<std::size_t>(o.n) : 3);
    SublevelComplex c = enumerate_sublevel(*s, height, o.depth, o.cap);
    r.add("structure", s->name());
    r.add("max height", height);
    r.add("depth window", o.depth);
    r.add("pieces", c.pieces.size());
    r.add("vertices", c.vertices.size());
    r.add("edges", c.covers.size());
    r.add("comparable pairs", c.comparable.size());
    r.add("max successors", c.max_successors);
    r.add("max predecessors", c.max_predecessors);
    std::vector<std::size_t> by_height(height + 1, 0);
    for (const PseudoVertex& v : c.vertices) ++by_height[v.height()];
    json hs = json::array();
    for (std::size_t h = 1; h <= height; ++h) hs.push_back(by_height[h]);
    r.add("vertices by height", hs);
  } else if (kind == "nerve") {
    auto s = make_vdh_structure(o.d, parse_group(o.H, o.d));
    std::vector<Word> blocks;
    if (!o.partition.empty()) {
      std::string text = o.partition;
      std::replace(text.begin(), text.end(), ',', ' ');
      std::istringstream in(text);
      std::string tok;
      while (in >> tok) blocks.push_back(parse_word(tok, o.d));
    } else {
      blocks = comb_partition(o.d, o.height ? o.height : 6);
    }
    if (!is_ball_partition(*s, blocks)) throw ContractError("blocks do not partition A^ω");
    PseudoVertex v = positive_vertex(*s, make_partition(*s, blocks));
    NerveComplex nv = nerve(*s, v, o.cap);
    ConnectivityResult cr = connectivity_check(nv.flag, o.k);
    json bs = json::array();
    for (const Word& w : blocks) bs.push_back(w.to_string());
    r.add("structure", s->name());
    r.add("partition", bs);
    r.add("height", v.height());
    r.add("nerve vertices", nv.vertices.size());
    r.add("nerve edges", nv.flag.edges.size());
    r.add("components", count_components(nv.flag));
    r.add("k", o.k);
    r.add("verdict", to_string(cr.verdict));
    if (!cr.detail.empty()) r.add("detail", cr.detail);
  } else if (kind == "diagram-roundtrip") {
    GroupPtr H = share_group(PermGroup::trivial(o.d));
    auto s = make_vdh_structure(o.d, PermGroup::trivial(o.d));
    std::mt19937_64 rng(o.seed);
    std::size_t failures = 0;
    std::size_t transistors = 0;
    for (std::size_t i = 0; i < o.count; ++i) {
      ReducedTable g = reduce(random_table(o.d, H, o.max_columns, rng));
      BraidedDiagram dg = reduce(triple_to_diagram(*s, triple_from_table(g)));
      transistors = std::max(transistors, dg.transistors.size());
      ReducedTable back = reduce(table_from_triple(o.d, H, diagram_to_triple(*s, dg)));
      if (!(back == g)) ++failures;
    }
    r.add("d", o.d);
    r.add("seed", o.seed);
    r.add("round trips", o.count);
    r.add("max reduced transistors", transistors);
    r.add("failures", failures);
  } else {
    throw InputError("unknown report " + kind);
  }
  emit(o, out, r.render(o.format));
}

SemigroupPresentation load_presentation(const Options& o) {
  if (o.presentation.empty()) return SemigroupPresentation::parse("x = x x");
  return SemigroupPresentation::parse(read_file(o.presentation));
}

void cmd_diagram(const std::string& op, Options o, std::ostream& out) {
  if (o.format.empty()) o.format = "json";
  SemigroupPresentation p = load_presentation(o);
  if (o.inputs.size() != 1) throw InputError("expected one --input diagram");
  BraidedDiagram d = diagram_from_json(parse_json(read_file(o.inputs.front()), o.inputs.front()), p);
  DiagramCheck check = validate(d, p);
  if (op == "validate") {
    emit_json(o, out, json{{"valid", check.ok}, {"condition", check.condition}, {"witness", check.witness}});
    return;
  }
  if (!check.ok) throw ContractError("invalid diagram: " + check.condition + " " + check.witness);
  if (op == "reduce") {
    emit_json(o, out, diagram_to_json(reduce(d), p));
  } else if (op == "outcomes") {
    auto outcomes = reduction_outcomes(d, o.cap);
    json list = json::array();
    for (const BraidedDiagram& x : outcomes) list.push_back(diagram_to_json(x, p));
    emit_json(o, out, json{{"distinct outcomes", outcomes.size()}, {"outcomes", list}});
  } else {
    throw InputError("unknown diagram operation " + op);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations in Nekrashevych-Röver groups and finite similarity structure groups", "simgroup"};
  app.require_subcommand(1);
  Options o;

  auto add_group = [&](CLI::App* c) {
    c->add_option("--d", o.d, "Alphabet size")->check(CLI::Range(2, 12));
    c->add_option("--H", o.H, "Local group: cycle generators \"(1 2),(1 2 3)\", sym, alt or trivial");
  };
  auto add_io = [&](CLI::App* c) {
    c->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  std::string element_op;
  CLI::App* element = app.add_subcommand("element", "Arithmetic on table elements");
  element->add_option("op", element_op, "mul, inv, reduce, parity, apply, lambda or transporter")
      ->required()
      ->check(CLI::IsMember({"mul", "inv", "reduce", "parity", "apply", "lambda", "transporter"}));
  element->add_option("--input,-i", o.inputs, "Element JSON file (repeatable)");
  element->add_option("--word,-w", o.word, "Word for apply and lambda");
  element->add_option("--from", o.from, "Source ball for transporter");
  element->add_option("--to", o.to, "Target ball for transporter");
  add_group(element);
  add_io(element);

  CLI::App* germ = app.add_subcommand("germ", "Germ group at a point");
  germ->add_option("--point,-p", o.point, "\"u:v\" or \"symbols:{a,b}\"")->required();
  add_group(germ);
  add_io(germ);

  std::string report_kind;
  CLI::App* report = app.add_subcommand("report", "Reports");
  report->add_option("kind", report_kind, "abelianization, simplicity, fingerprint, complex, nerve or diagram-roundtrip")
      ->required()
      ->check(CLI::IsMember({"abelianization", "simplicity", "fingerprint", "complex", "nerve", "diagram-roundtrip"}));
  add_group(report);
  add_io(report);
  report->add_option("--max-period", o.max_period, "Longest period for fingerprints")->check(CLI::PositiveNumber);
  report->add_option("--compare-d", o.compare_d, "Second arity for fingerprint comparison")->check(CLI::Range(2, 12));
  report->add_option("--compare-H", o.compare_H, "Second local group for fingerprint comparison");
  report->add_option("--structure", o.structure, "finite or vdh");
  report->add_option("--n", o.n, "Number of points of the finite space")->check(CLI::Range(1, 8));
  report->add_option("--G", o.G, "Sim(X,X) for the finite space");
  report->add_option("--max-height", o.max_height, "Height bound for the sublevel complex");
  report->add_option("--depth", o.depth, "Depth window for the sublevel complex")->check(CLI::Range(0, 6));
  report->add_option("--cap", o.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  report->add_option("--partition", o.partition, "Blocks of a positive vertex, comma separated");
  report->add_option("--height", o.height, "Height of the comb vertex when no partition is given");
  report->add_option("--k", o.k, "Connectivity degree to check")->check(CLI::Range(-1, 3));
  report->add_option("--count", o.count, "Number of random elements");
  report->add_option("--max-columns", o.max_columns, "Column bound for random elements")->check(CLI::PositiveNumber);
  report->add_option("--seed", o.seed, "Random seed");

  std::string diagram_op;
  CLI::App* diagram = app.add_subcommand("diagram", "Braided diagrams");
  diagram->add_option("op", diagram_op, "validate, reduce or outcomes")
      ->required()
      ->check(CLI::IsMember({"validate", "reduce", "outcomes"}));
  diagram->add_option("--input,-i", o.inputs, "Diagram JSON file");
  diagram->add_option("--presentation", o.presentation, "Presentation file (default x = x x)");
  diagram->add_option("--cap", o.cap, "State cap for outcomes")->check(CLI::PositiveNumber);
  add_io(diagram);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (element->parsed()) {
      cmd_element(element_op, o, out);
    } else if (germ->parsed()) {
      cmd_germ(o, out);
    } else if (report->parsed()) {
      cmd_report(report_kind, o, out);
    } else if (diagram->parsed()) {
      cmd_diagram(diagram_op, o, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (partial results discarded; raise --cap)\n";
    return kCapExceeded;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kContractError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace simgroup::cli
