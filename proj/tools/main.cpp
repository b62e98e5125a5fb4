// fintop: finite topological spaces, lifting properties and their
// verification from the command line.
//
// Exit codes: 0 ok, 1 a property failed, 2 usage or parse error.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fintop/fintop.hpp"
#include "records.hpp"

namespace {

using fintop::records::Json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Options {
  bool json = false;
  std::optional<std::size_t> bound;
  std::string out;
  std::string file;
  bool witnesses = false;
  bool maps = false;
};

/// Text goes to stdout unless --json is set; records go to stdout with
/// --json and to the --out file when given.
class Sink {
 public:
  explicit Sink(const Options& opt) : json_(opt.json) {
    if (!opt.out.empty()) {
      file_.open(opt.out);
      if (!file_) throw fintop::InputError("cannot open output file " + opt.out);
    }
  }

  void text(const std::string& s) {
    if (!json_) std::cout << s << '\n';
  }

  void record(const Json& r) {
    const std::string line = r.dump();
    if (json_) std::cout << line << '\n';
    if (file_.is_open()) file_ << line << '\n';
  }

 private:
  bool json_;
  std::ofstream file_;
};

bool is_map_text(const std::string& s) { return s.find("-->") != std::string::npos; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::vector<std::string> holding_map_predicates(const fintop::MapProperties& p) {
  std::vector<std::string> out;
  for (auto q : fintop::kMapPredicates) {
    if (p[q]) out.emplace_back(fintop::to_string(q));
  }
  return out;
}

std::vector<std::string> holding_space_predicates(const fintop::SpaceProperties& p) {
  std::vector<std::string> out;
  for (auto q : fintop::kSpacePredicates) {
    if (p[q]) out.emplace_back(fintop::to_string(q));
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string square_text(const fintop::Square& sq, const std::string& indent) {
  return indent + "i: " + render(sq.i) + "\n" + indent + "p: " + render(sq.p) + "\n" + indent +
         "f: " + render(sq.f) + "\n" + indent + "g: " + render(sq.g);
}

// parse ---------------------------------------------------------------------

int parse_one(const std::string& expr, Sink& sink) {
  Json inputs;
  inputs["expr"] = expr;
  Json rec = fintop::records::base("parse", inputs);
  if (is_map_text(expr)) {
    const fintop::Map f = fintop::parse_map(expr);
    const auto props = fintop::classify_map(f);
    for (auto q : fintop::kMapPredicates) rec["verdicts"][std::string(fintop::to_string(q))] = props[q];
    rec["key"] = fintop::canonical_form(f).hex();
    rec["kind"] = "map";
    rec["normalized"] = render(f);
    rec["domain"] = fintop::records::space_summary(f.dom());
    rec["codomain"] = fintop::records::space_summary(f.cod());
    rec["assignment"] = fintop::records::assignment(f);
    sink.record(rec);

    std::ostringstream os;
    os << "map " << render(f) << '\n';
    os << "  domain:   " << f.dom().size() << " points " << render(f.dom()) << '\n';
    os << "  codomain: " << f.cod().size() << " points " << render(f.cod()) << '\n';
    os << "  assignment:";
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
      os << ' ' << f.dom().label(x).display() << "->" << f.cod().label(f(x)).display();
    }
    os << '\n';
    const auto open_cod = fintop::open_sets(f.cod());
    os << "  codomain open sets:";
    for (auto u : open_cod) os << ' ' << fintop::records::subset_text(f.cod(), u);
    os << '\n';
    os << "  holds: " << join(holding_map_predicates(props), ", ");
    sink.text(os.str());
  } else {
    const fintop::Space x = fintop::parse_space(expr);
    const auto props = fintop::classify_space(x);
    for (auto q : fintop::kSpacePredicates) rec["verdicts"][std::string(fintop::to_string(q))] = props[q];
    rec["key"] = fintop::canonical_form(x).hex();
    rec["kind"] = "space";
    rec["normalized"] = render(x);
    const Json summary = fintop::records::space_summary(x);
    rec["points"] = summary["points"];
    rec["relations"] = summary["relations"];
    rec["open_sets"] = summary["open_sets"];
    sink.record(rec);

    std::ostringstream os;
    os << (x.empty() ? "empty space " : "space ") << render(x) << '\n';
    os << "  points: " << x.size() << '\n';
    os << "  relations:";
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (a != b && x.leq(a, b)) os << ' ' << x.label(a).display() << "->" << x.label(b).display();
      }
    }
    os << '\n' << "  open sets:";
    for (auto u : fintop::open_sets(x)) os << ' ' << fintop::records::subset_text(x, u);
    os << '\n' << "  holds: " << join(holding_space_predicates(props), ", ");
    sink.text(os.str());
  }
  return kOk;
}

/// Runs fn on each non-blank line of a file, or on the single expression.
template <typename Fn>
int for_each_input(const Options& opt, const std::string& expr, Sink& sink, Fn&& fn) {
  if (opt.file.empty()) {
    if (expr.empty()) throw fintop::InputError("an expression or --file is required");
    return fn(expr);
  }
  std::ifstream in(opt.file);
  if (!in) throw fintop::InputError("cannot read " + opt.file);
  int worst = kOk;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    try {
      worst = std::max(worst, fn(line));
    } catch (const fintop::InputError& e) {
      Json inputs;
      inputs["expr"] = line;
      Json rec = fintop::records::base("error", inputs);
      rec["line"] = lineno;
      rec["message"] = e.what();
      sink.record(rec);
      std::cerr << opt.file << ":" << lineno << ": " << e.what() << '\n';
      worst = kUsage;
    }
  }
  return worst;
}

// lift ----------------------------------------------------------------------

int cmd_lift(const std::string& itext, const std::string& ptext, const Options& opt, Sink& sink) {
  const fintop::Map i = fintop::parse_map(itext);
  const fintop::Map p = fintop::parse_map(ptext);
  fintop::LiftOptions lo;
  lo.collect_witnesses = opt.witnesses;
  const auto v = fintop::check_lifting(i, p, lo);

  Json inputs;
  inputs["i"] = itext;
  inputs["p"] = ptext;
  Json rec = fintop::records::base("lift", inputs);
  rec["verdicts"]["holds"] = v.holds;
  rec["verdicts"]["squares_checked"] = v.squares_checked;
  rec["key"] = fintop::canonical_form(i).hex() + ":" + fintop::canonical_form(p).hex();
  rec["counterexample"] = fintop::records::optional_square(v.counterexample);
  if (opt.witnesses) {
    Json ws = Json::array();
    for (const auto& w : v.witnesses) {
      Json wj = fintop::records::square(w.square);
      wj["h"] = render(w.lift);
      ws.push_back(wj);
    }
    rec["witnesses"] = ws;
  }
  sink.record(rec);

  std::ostringstream os;
  os << render(i) << " /_ " << render(p) << ": " << (v.holds ? "holds" : "fails") << " ("
     << v.squares_checked << " squares checked)";
  if (v.counterexample) {
    os << "\n  commuting square without a lift:\n" << square_text(*v.counterexample, "    ");
  }
  if (opt.witnesses) {
    std::size_t k = 0;
    for (const auto& w : v.witnesses) {
      os << "\n  square " << ++k << ": f = " << render(w.square.f) << ", g = " << render(w.square.g)
         << ", lift h = " << render(w.lift);
    }
  }
  sink.text(os.str());
  return v.holds ? kOk : kFailed;
}

// classify ------------------------------------------------------------------

int classify_one(const std::string& expr, Sink& sink) {
  fintop::FormEvaluator ev;
  Json inputs;
  inputs["expr"] = expr;
  Json rec = fintop::records::base("classify", inputs);
  std::ostringstream os;
  os << pad("predicate", 32) << pad("direct", 8) << "lifting\n";
  auto line = [&](std::string_view name, bool direct, std::optional<bool> lifting) {
    Json v;
    v["direct"] = direct;
    v["lifting"] = lifting ? Json(*lifting) : Json(nullptr);
    rec["verdicts"][std::string(name)] = v;
    os << pad(std::string(name), 32) << pad(yes_no(direct), 8)
       << (lifting ? yes_no(*lifting) : std::string("-"))
       << (lifting && *lifting != direct ? "   (differs)" : "") << '\n';
  };
  if (is_map_text(expr)) {
    const fintop::Map f = fintop::parse_map(expr);
    const auto props = fintop::classify_map(f);
    os << "map " << render(f) << '\n';
    for (auto q : fintop::kMapPredicates) {
      const auto& c = fintop::lifting_characterization(fintop::to_string(q));
      line(fintop::to_string(q), props[q], fintop::lifting_verdict(ev, c, f).holds);
    }
    rec["key"] = fintop::canonical_form(f).hex();
    rec["kind"] = "map";
  } else {
    const fintop::Space x = fintop::parse_space(expr);
    const auto props = fintop::classify_space(x);
    os << "space " << render(x) << '\n';
    for (auto q : fintop::kSpacePredicates) {
      const auto& c = fintop::lifting_characterization(fintop::to_string(q));
      line(fintop::to_string(q), props[q], fintop::lifting_verdict(ev, c, x).holds);
    }
    rec["key"] = fintop::canonical_form(x).hex();
    rec["kind"] = "space";
  }
  rec["intermediate_bound"] = ev.intermediate_bound();
  sink.record(rec);
  std::string s = os.str();
  s.pop_back();
  sink.text(s);
  return kOk;
}

// verify --------------------------------------------------------------------

std::size_t checked_bound(const fintop::Characterization& c, std::optional<std::size_t> bound) {
  const std::size_t b = bound.value_or(fintop::default_bound_for(c));
  const std::size_t limit =
      c.is_map_predicate ? fintop::kMaxCensusMapBound : fintop::kMaxCensusSpaceBound;
  if (b > limit) {
    throw fintop::InputError("bound " + std::to_string(b) + " exceeds the limit of " +
                             std::to_string(limit) + " for " + c.predicate);
  }
  return b;
}

int cmd_verify(const std::string& name, const Options& opt, Sink& sink) {
  std::vector<const fintop::Characterization*> todo;
  if (name == "all") {
    for (const auto& c : fintop::characterizations()) todo.push_back(&c);
  } else {
    todo.push_back(&fintop::lifting_characterization(name));
  }
  std::vector<std::size_t> bounds;
  for (const auto* c : todo) bounds.push_back(checked_bound(*c, opt.bound));

  fintop::FormEvaluator ev;
  int status = kOk;
  for (std::size_t k = 0; k < todo.size(); ++k) {
    const auto r = fintop::verify_correspondence(todo[k]->predicate, bounds[k], ev);
    sink.record(fintop::records::report(r));
    if (!r.passed()) status = kFailed;

    std::ostringstream os;
    os << pad(r.predicate, 32) << "bound " << r.bound << "  " << (r.map_predicate ? "maps " : "spaces ")
       << std::setw(6) << r.instances_checked << "  direct " << std::setw(6) << r.direct_holds
       << "  mismatches " << r.mismatch_count() << "  " << (r.passed() ? "PASS" : "FAIL");
    for (const auto& f : r.forms) {
      os << "\n    " << f.id << ": " << f.text << "  lifting holds " << f.lifting_holds
         << ", mismatches " << f.mismatches.size();
      if (f.caveat) os << "\n      note: " << *f.caveat;
      for (const auto& m : f.mismatches) {
        os << "\n      mismatch " << m.expr << "  direct " << yes_no(m.direct) << ", lifting "
           << yes_no(m.lifting);
        if (m.counterexample) os << '\n' << square_text(*m.counterexample, "        ");
      }
    }
    if (!r.extension_of.empty()) {
      os << "\n    lifting holds but not " << r.extension_of << ": " << r.extension.size() << " maps";
      for (const auto& e : r.extension) os << "\n      " << e;
    }
    sink.text(os.str());
  }
  return status;
}

// orthogonal ----------------------------------------------------------------

int cmd_orthogonal(const std::string& expr, const Options& opt, Sink& sink) {
  const std::size_t bound = opt.bound.value_or(fintop::kDefaultMapBound);
  if (bound > fintop::kMaxCensusMapBound) {
    throw fintop::InputError("bound " + std::to_string(bound) + " exceeds the limit of " +
                             std::to_string(fintop::kMaxCensusMapBound));
  }
  const fintop::ClassEvaluator ce(fintop::parse_class_expr(expr), bound);
  const auto members = ce.members(bound);
  const auto& census = fintop::shared_census(bound, true);

  Json inputs;
  inputs["expr"] = expr;
  inputs["bound"] = bound;
  Json head = fintop::records::base("orthogonal", inputs);
  head["verdicts"]["members"] = members.size();
  head["verdicts"]["census_maps"] = census.morphisms.size();
  head["bounds_chain"] = ce.bounds_chain();
  head["caveat"] = ce.caveat() ? Json(*ce.caveat()) : Json(nullptr);
  sink.record(head);

  std::ostringstream os;
  if (ce.caveat()) os << "NOTE: " << *ce.caveat() << '\n';
  os << render(ce.expr()) << " restricted to spaces with at most " << bound << " points: "
     << members.size() << " of " << census.morphisms.size() << " maps";
  for (const auto& m : members) {
    const std::string key = census.morphism_keys[*census.locate(m)].hex();
    Json rec = fintop::records::base("orthogonal", inputs);
    rec["verdicts"]["member"] = true;
    rec["key"] = key;
    rec["expr"] = render(m);
    sink.record(rec);
    os << "\n  " << render(m);
  }
  sink.text(os.str());
  return kOk;
}

// census --------------------------------------------------------------------

int cmd_census(const Options& opt, Sink& sink) {
  const std::size_t bound = opt.bound.value_or(fintop::kDefaultMapBound);
  if (bound > fintop::kMaxCensusSpaceBound) {
    throw fintop::InputError("bound exceeds the limit of 7 points");
  }
  const auto& census = fintop::shared_census(bound, opt.maps);
  std::vector<std::size_t> per_size(bound + 1, 0);
  for (const auto& s : census.spaces) ++per_size[s.size()];

  Json inputs;
  inputs["bound"] = bound;
  std::ostringstream os;
  os << "points  classes  labeled";
  Json head = fintop::records::base("census", inputs);
  for (std::size_t n = 0; n <= bound; ++n) {
    const auto labeled = fintop::labeled_topology_count(n);
    os << '\n' << std::setw(6) << n << std::setw(9) << per_size[n] << std::setw(9) << labeled;
    head["verdicts"]["classes"].push_back(per_size[n]);
    head["verdicts"]["labeled"].push_back(labeled);
  }
  head["verdicts"]["spaces"] = census.spaces.size();
  if (opt.maps) head["verdicts"]["maps"] = census.morphisms.size();
  sink.record(head);
  os << "\ntotal " << census.spaces.size() << " spaces";
  if (opt.maps) os << ", " << census.morphisms.size() << " maps";
  for (std::size_t k = 0; k < census.spaces.size(); ++k) {
    Json rec = fintop::records::base("census", inputs);
    rec["verdicts"]["points"] = census.spaces[k].size();
    rec["key"] = census.space_keys[k].hex();
    rec["expr"] = render(census.spaces[k]);
    sink.record(rec);
    os << "\n  " << render(census.spaces[k]);
  }
  if (opt.maps) {
    for (std::size_t k = 0; k < census.morphisms.size(); ++k) {
      Json rec = fintop::records::base("census", inputs);
      rec["key"] = census.morphism_keys[k].hex();
      rec["expr"] = render(census.morphisms[k]);
      sink.record(rec);
      os << "\n  " << render(census.morphisms[k]);
    }
  }
  sink.text(os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite topological spaces and lifting properties"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Print line-delimited JSON records");
  app.add_option("--out", opt.out, "Also write JSON records to this file");

  std::string expr, itext, ptext, name;

  auto* parse = app.add_subcommand("parse", "Parse and describe a space or map");
  parse->add_option("expr", expr, "Space or map expression");
  parse->add_option("--file", opt.file, "Read one expression per line");

  auto* lift = app.add_subcommand("lift", "Decide the lifting property i /_ p");
  lift->add_option("i", itext, "Left map")->required();
  lift->add_option("p", ptext, "Right map")->required();
  lift->add_flag("--witnesses", opt.witnesses, "List every square with its lift");

  auto* classify = app.add_subcommand("classify", "Direct and lifting verdicts side by side");
  classify->add_option("expr", expr, "Space or map expression");
  classify->add_option("--file", opt.file, "Read one expression per line");

  auto* verify = app.add_subcommand("verify", "Compare direct and lifting forms over the census");
  verify->add_option("predicate", name, "Predicate name or 'all'")->required();
  verify->add_option("--bound", opt.bound, "Largest number of points per space");

  auto* orth = app.add_subcommand("orthogonal", "List census members of an orthogonal class");
  orth->add_option("expr", expr, "Class expression, e.g. \"{ {}-->{o} }^r\"")->required();
  orth->add_option("--bound", opt.bound, "Largest number of points per space");

  auto* census = app.add_subcommand("census", "Count and list spaces up to a bound");
  census->add_option("--bound", opt.bound, "Largest number of points per space");
  census->add_flag("--maps", opt.maps, "Also list the maps between census spaces");

  for (auto* sub : {parse, lift, classify, verify, orth, census}) {
    sub->add_flag("--json", opt.json, "Print line-delimited JSON records");
    sub->add_option("--out", opt.out, "Also write JSON records to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Sink sink(opt);
    if (*parse) return for_each_input(opt, expr, sink, [&](const std::string& e) { return parse_one(e, sink); });
    if (*lift) return cmd_lift(itext, ptext, opt, sink);
    if (*classify) {
      return for_each_input(opt, expr, sink, [&](const std::string& e) { return classify_one(e, sink); });
    }
    if (*verify) return cmd_verify(name, opt, sink);
    if (*orth) return cmd_orthogonal(expr, opt, sink);
    if (*census) return cmd_census(opt, sink);
  } catch (const fintop::ParseError& e) {
    if (opt.json) {
      Json inputs;
      inputs["expr"] = expr.empty() ? itext + " " + ptext : expr;
      Json rec = fintop::records::base("error", inputs);
      rec["offset"] = e.offset();
      rec["message"] = e.reason();
      std::cout << rec.dump() << '\n';
    }
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fintop::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
