#include "serialize.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "simgroup/error.hpp"

namespace simgroup::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_int(std::string_view s, std::string_view what) {
  std::string t = trim(s);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InputError("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return std::stoi(t);
}

}  // namespace

Perm parse_cycles(std::string_view text, int degree) {
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i + 1;
  Perm result = Perm::identity(degree);
  std::size_t pos = 0;
  const std::string t = trim(text);
  while (pos < t.size()) {
    if (std::isspace(static_cast<unsigned char>(t[pos]))) {
      ++pos;
      continue;
    }
    if (t[pos] != '(') throw InputError("expected '(' at column " + std::to_string(pos + 1) + " of '" + t + "'");
    std::size_t close = t.find(')', pos);
    if (close == std::string::npos) throw InputError("unclosed cycle in '" + t + "'");
    std::string body = t.substr(pos + 1, close - pos - 1);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<int> cycle;
    std::string tok;
    while (in >> tok) {
      int x = parse_int(tok, "cycle entry");
      if (x < 1 || x > degree) throw InputError("cycle entry " + tok + " out of range 1.." + std::to_string(degree));
      if (std::find(cycle.begin(), cycle.end(), x) != cycle.end()) throw InputError("repeated cycle entry " + tok);
      cycle.push_back(x);
    }
    std::vector<int> img = images;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      img[static_cast<std::size_t>(cycle[i] - 1)] = cycle[(i + 1) % cycle.size()];
    }
    // Cycles compose right to left, matching the product convention.
    result = result * Perm::from_images(img);
    pos = close + 1;
  }
  return result;
}

PermGroup parse_group(std::string_view text, int degree) {
  if (degree < 1) throw InputError("degree must be positive");
  const std::string t = trim(text);
  if (t == "sym") return PermGroup::symmetric(degree);
  if (t == "alt") return PermGroup::alternating(degree);
  if (t.empty() || t == "trivial" || t == "id") return PermGroup::trivial(degree);
  std::vector<Perm> gens;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t open = t.find('(', pos);
    if (open == std::string::npos) {
      if (!trim(t.substr(pos)).empty()) throw InputError("unexpected text in group '" + t + "'");
      break;
    }
    // A generator is a maximal run of adjacent cycles; commas between ')' and '(' separate generators.
    std::size_t end = open;
    while (true) {
      std::size_t close = t.find(')', end);
      if (close == std::string::npos) throw InputError("unclosed cycle in '" + t + "'");
      end = close + 1;
      std::size_t next = end;
      while (next < t.size() && t[next] == ' ') ++next;
      if (next < t.size() && t[next] == '(') {
        end = next;
        continue;
      }
      break;
    }
    gens.push_back(parse_cycles(t.substr(open, end - open), degree));
    pos = end;
    while (pos < t.size() && (t[pos] == ' ' || t[pos] == ',')) ++pos;
  }
  return PermGroup::closure(degree, gens);
}

json perm_to_json(const Perm& p) { return json(p.images()); }

Perm perm_from_json(const json& j, int degree) {
  if (!j.is_array()) throw InputError("permutation must be an array of images");
  std::vector<int> images;
  for (const json& x : j) {
    if (!x.is_number_integer()) throw InputError("permutation entries must be integers");
    images.push_back(x.get<int>());
  }
  if (static_cast<int>(images.size()) != degree) {
    throw InputError("permutation has " + std::to_string(images.size()) + " entries, expected " + std::to_string(degree));
  }
  return Perm::from_images(std::move(images));
}

json word_to_json(const Word& w, int d) { return w.to_string(d > 9); }

Word word_from_json(const json& j, int d) {
  if (!j.is_string()) throw InputError("word must be a string");
  Word w = Word::parse(j.get<std::string>());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > d) throw InputError("letter out of range in word '" + j.get<std::string>() + "'");
  }
  return w;
}

json element_to_json(const TableElement& g) {
  json cols = json::array();
  for (const Column& c : g.columns()) {
    cols.push_back({{"v", word_to_json(c.v, g.arity())}, {"h", perm_to_json(c.h)}, {"u", word_to_json(c.u, g.arity())}});
  }
  json gens = json::array();
  for (const Perm& p : g.group().generators()) gens.push_back(perm_to_json(p));
  return {{"d", g.arity()}, {"H", gens}, {"columns", cols}};
}

TableElement element_from_json(const json& j) {
  if (!j.is_object()) throw InputError("element must be a JSON object");
  for (const char* key : {"d", "columns"}) {
    if (!j.contains(key)) throw InputError(std::string("element is missing \"") + key + "\"");
  }
  if (!j["d"].is_number_integer()) throw InputError("\"d\" must be an integer");
  const int d = j["d"].get<int>();
  if (d < 2) throw InputError("\"d\" must be at least 2");
  std::vector<Perm> gens;
  if (j.contains("H")) {
    if (!j["H"].is_array()) throw InputError("\"H\" must be an array of permutations");
    for (const json& p : j["H"]) gens.push_back(perm_from_json(p, d));
  }
  GroupPtr H = share_group(PermGroup::closure(d, gens));
  if (!j["columns"].is_array()) throw InputError("\"columns\" must be an array");
  std::vector<Column> cols;
  for (const json& c : j["columns"]) {
    if (!c.is_object() || !c.contains("v") || !c.contains("h") || !c.contains("u")) {
      throw InputError("each column needs \"v\", \"h\" and \"u\"");
    }
    cols.push_back(Column{word_from_json(c["v"], d), perm_from_json(c["h"], d), word_from_json(c["u"], d)});
  }
  return TableElement(d, std::move(H), std::move(cols));
}

json diagram_to_json(const BraidedDiagram& diagram, const SemigroupPresentation& p) {
  json wires = json::array();
  for (Symbol s : diagram.wire_labels) wires.push_back(p.name(s));
  json ts = json::array();
  for (const Transistor& t : diagram.transistors) ts.push_back({{"top", t.top}, {"bottom", t.bottom}});
  return {{"wires", wires}, {"transistors", ts}, {"frame_top", diagram.frame_top}, {"frame_bottom", diagram.frame_bottom}};
}

BraidedDiagram diagram_from_json(const json& j, const SemigroupPresentation& p) {
  if (!j.is_object()) throw InputError("diagram must be a JSON object");
  for (const char* key : {"wires", "transistors", "frame_top", "frame_bottom"}) {
    if (!j.contains(key)) throw InputError(std::string("diagram is missing \"") + key + "\"");
  }
  auto ids = [](const json& a, const char* what) {
    if (!a.is_array()) throw InputError(std::string(what) + " must be an array of wire ids");
    std::vector<int> out;
    for (const json& x : a) {
      if (!x.is_number_integer()) throw InputError(std::string(what) + " must hold integers");
      out.push_back(x.get<int>());
    }
    return out;
  };
  BraidedDiagram d;
  for (const json& w : j["wires"]) {
    if (!w.is_string()) throw InputError("wire labels must be symbol names");
    d.wire_labels.push_back(p.symbol(w.get<std::string>()));
  }
  for (const json& t : j["transistors"]) {
    if (!t.is_object() || !t.contains("top") || !t.contains("bottom")) throw InputError("transistor needs \"top\" and \"bottom\"");
    d.transistors.push_back(Transistor{ids(t["top"], "transistor top"), ids(t["bottom"], "transistor bottom")});
  }
  d.frame_top = ids(j["frame_top"], "frame_top");
  d.frame_bottom = ids(j["frame_bottom"], "frame_bottom");
  const int n = static_cast<int>(d.wire_labels.size());
  auto in_range = [n](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [n](int w) { return w >= 0 && w < n; }); };
  bool ok = in_range(d.frame_top) && in_range(d.frame_bottom);
  for (const Transistor& t : d.transistors) ok = ok && in_range(t.top) && in_range(t.bottom);
  if (!ok) throw InputError("wire id out of range");
  wire_ends(d);
  return d;
}

PointSpec parse_point(std::string_view text, int d) {
  const std::string t = trim(text);
  auto check_letters = [d](const Word& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 1 || w[i] > d) throw InputError("letter out of range in point");
    }
  };
  if (t.rfind("symbols:", 0) == 0) {
    std::string body = trim(std::string_view(t).substr(8));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw InputError("expected symbols:{a,b,...}");
    body = body.substr(1, body.size() - 2);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<int> symbols;
    std::string tok;
    while (in >> tok) {
      int x = parse_int(tok, "symbol");
      if (x < 1 || x > d) throw InputError("symbol " + tok + " out of range");
      symbols.push_back(x);
    }
    std::sort(symbols.begin(), symbols.end());
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    if (symbols.empty()) throw InputError("empty symbol set");
    return symbols;
  }
  std::size_t colon = t.find(':');
  if (colon == std::string::npos) throw InputError("expected a point \"u:v\" or \"symbols:{...}\"");
  Word u = Word::parse(trim(std::string_view(t).substr(0, colon)));
  Word v = Word::parse(trim(std::string_view(t).substr(colon + 1)));
  check_letters(u);
  check_letters(v);
  if (v.empty()) throw InputError("the period of a point must be nonempty");
  return EventuallyPeriodicPoint{u, v};
}

std::string point_to_string(const PointSpec& point) {
  if (const auto* x = std::get_if<EventuallyPeriodicPoint>(&point)) {
    return (x->preperiod.empty() ? std::string("ε") : x->preperiod.to_string()) + ":" + x->period.to_string();
  }
  std::string out = "symbols:{";
  const auto& s = std::get<std::vector<int>>(point);
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

json germ_to_json(const GermDescriptor& g) {
  json gens = json::array();
  for (const Perm& p : g.hx.generators()) gens.push_back(p.to_cycle_string());
  return {{"Hx_order", g.hx.elements().size()},
          {"Hx_generators", gens},
          {"ell", g.ell},
          {"twist", g.twist.to_cycle_string()},
          {"structure", to_string(g.structure())}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into a line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

void write_atomically(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw InputError("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace simgroup::cli
