#include "strataforge/render.hpp"

#include <algorithm>
#include <map>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace strataforge {

using Json = nlohmann::ordered_json;

std::string ConfigIssue::text() const {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", column " << column << ": ";
  if (!field.empty()) os << field << ": ";
  os << message;
  return os.str();
}

namespace {

std::string join_issues(const std::vector<ConfigIssue>& list) {
  std::string out = "invalid configuration";
  for (const auto& i : list) out += "\n  " + i.text();
  return out;
}

// ---------------------------------------------------------------- config

class ConfigReader {
 public:
  void issue(const std::string& field, const YAML::Node& at, const std::string& msg) {
    int line = 0, col = 0;
    if (at.IsDefined() && at.Mark().line >= 0) {
      line = at.Mark().line + 1;
      col = at.Mark().column + 1;
    }
    issues.push_back({field, line, col, msg});
  }

  std::optional<long> integer(const std::string& field, const YAML::Node& n) {
    if (!n.IsScalar()) {
      issue(field, n, "expected an integer");
      return std::nullopt;
    }
    try {
      return n.as<long>();
    } catch (const YAML::Exception&) {
      issue(field, n, "expected an integer, got '" + n.Scalar() + "'");
      return std::nullopt;
    }
  }

  std::optional<std::string> text(const std::string& field, const YAML::Node& n) {
    if (!n.IsScalar()) {
      issue(field, n, "expected a string");
      return std::nullopt;
    }
    return n.Scalar();
  }

  FixtureSpec fixture(const std::string& field, const YAML::Node& key, const YAML::Node& body) {
    FixtureSpec fx;
    if (auto k = text(field + ".frame", key)) fx.frame.text = *k;
    fx.frame.line = key.Mark().line + 1;
    fx.frame.column = key.Mark().column + 1;
    auto words = [&](const YAML::Node& list) {
      if (!list.IsSequence()) {
        issue(field + ".generators", list, "expected a list of Weyl words");
        return;
      }
      for (const auto& w : list) {
        if (auto s = text(field + ".generators", w)) fx.generators.push_back(*s);
      }
    };
    if (body.IsSequence()) {
      words(body);
    } else if (body.IsMap()) {
      for (const auto& kv : body) {
        std::string k = kv.first.Scalar();
        if (k == "generators") {
          words(kv.second);
        } else if (k == "expected_order" || k == "expected_cosets") {
          auto v = integer(field + "." + k, kv.second);
          if (v && *v < 1) issue(field + "." + k, kv.second, "must be positive");
          if (v && *v >= 1) (k == "expected_order" ? fx.expected_order : fx.expected_cosets) = static_cast<std::size_t>(*v);
        } else if (k != "frame") {
          issue(field + "." + k, kv.first, "unknown key");
        }
      }
    } else if (!body.IsNull()) {
      issue(field, body, "expected a list of words or a mapping");
    }
    return fx;
  }

  std::vector<ConfigIssue> issues;
};

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> list) : std::runtime_error(join_issues(list)), issues(std::move(list)) {}

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError({{"", e.mark.line + 1, e.mark.column + 1, e.msg}});
  }
  ConfigReader rd;
  if (!root.IsMap()) throw ConfigError({{"", 1, 1, "top level must be a mapping"}});
  static const std::set<std::string> known{"type",         "grading",         "real_weyl_fixtures", "dotted_edges",
                                           "search_height", "search_cap",     "weyl_search_cap",    "limit",
                                           "format"};
  for (const auto& kv : root) {
    if (!known.count(kv.first.Scalar())) rd.issue(kv.first.Scalar(), kv.first, "unknown key");
  }
  if (!root["type"]) {
    rd.issue("type", root, "missing");
  } else if (auto t = rd.text("type", root["type"])) {
    cfg.type = *t;
  }
  std::size_t rank = 0;
  if (!cfg.type.empty()) {
    try {
      rank = RootSystem::build(cfg.type).rank();
    } catch (const std::exception&) {
      rd.issue("type", root["type"], "unknown root system '" + cfg.type + "'");
    }
  }
  if (!root["grading"]) {
    rd.issue("grading", root, "missing");
  } else if (!root["grading"].IsSequence()) {
    rd.issue("grading", root["grading"], "expected a list of 0/1 values");
  } else {
    for (const auto& g : root["grading"]) {
      auto v = rd.integer("grading", g);
      if (v && *v != 0 && *v != 1) rd.issue("grading", g, "entries must be 0 or 1");
      if (v) cfg.grading.push_back(static_cast<int>(*v));
    }
    if (rank && cfg.grading.size() != rank) {
      rd.issue("grading", root["grading"],
               "has " + std::to_string(cfg.grading.size()) + " entries but " + cfg.type + " has rank " + std::to_string(rank));
    }
    if (std::all_of(cfg.grading.begin(), cfg.grading.end(), [](int v) { return v == 0; }) && !cfg.grading.empty()) {
      rd.issue("grading", root["grading"], "at least one entry must be 1");
    }
  }
  if (auto h = root["search_height"]) {
    auto v = rd.integer("search_height", h);
    if (v && *v < 1) rd.issue("search_height", h, "must be at least 1");
    if (v && *v >= 1) cfg.search_height = static_cast<int>(*v);
  }
  for (const char* key : {"search_cap", "weyl_search_cap"}) {
    if (auto c = root[key]) {
      auto v = rd.integer(key, c);
      if (v && *v < 1) rd.issue(key, c, "must be positive");
      if (v && *v >= 1) (std::string(key) == "search_cap" ? cfg.search_cap : cfg.weyl_search_cap) = static_cast<std::size_t>(*v);
    }
  }
  if (auto fmt = root["format"]) {
    auto v = rd.text("format", fmt);
    if (v && *v != "json" && *v != "ascii" && *v != "dot") rd.issue("format", fmt, "must be json, ascii or dot");
    if (v) cfg.format = *v;
  }
  if (auto fx = root["real_weyl_fixtures"]) {
    if (fx.IsMap()) {
      for (const auto& kv : fx) cfg.fixtures.push_back(rd.fixture("real_weyl_fixtures", kv.first, kv.second));
    } else if (fx.IsSequence()) {
      for (const auto& e : fx) {
        if (!e.IsMap() || !e["frame"]) {
          rd.issue("real_weyl_fixtures", e, "each entry needs a 'frame'");
          continue;
        }
        cfg.fixtures.push_back(rd.fixture("real_weyl_fixtures", e["frame"], e));
      }
    } else {
      rd.issue("real_weyl_fixtures", fx, "expected a mapping from frames to generators");
    }
  }
  if (auto de = root["dotted_edges"]) {
    if (!de.IsSequence()) {
      rd.issue("dotted_edges", de, "expected a list of [from, to] pairs");
    } else {
      for (const auto& e : de) {
        if (!e.IsSequence() || e.size() != 2 || !e[0].IsScalar() || !e[1].IsScalar()) {
          rd.issue("dotted_edges", e, "expected a pair of orbit labels");
          continue;
        }
        cfg.dotted_edges.push_back({e[0].Scalar(), e[1].Scalar(), e.Mark().line + 1, e.Mark().column + 1});
      }
    }
  }
  if (auto lim = root["limit"]) {
    if (!lim.IsMap()) {
      rd.issue("limit", lim, "expected a mapping with frame, w and n");
    } else {
      LimitSpec ls;
      for (const auto& kv : lim) {
        std::string k = kv.first.Scalar();
        if (k != "frame" && k != "w" && k != "n") rd.issue("limit." + k, kv.first, "unknown key");
      }
      if (!lim["frame"]) {
        ls.frame.text = "0";
      } else if (auto f = rd.text("limit.frame", lim["frame"])) {
        ls.frame = {*f, lim["frame"].Mark().line + 1, lim["frame"].Mark().column + 1};
      }
      if (lim["w"]) {
        if (auto w = rd.text("limit.w", lim["w"])) ls.w = *w;
      }
      if (!lim["n"]) {
        rd.issue("limit.n", lim, "missing");
      } else if (auto n = rd.text("limit.n", lim["n"])) {
        ls.n = *n;
        ls.n_line = lim["n"].Mark().line + 1;
        ls.n_column = lim["n"].Mark().column + 1;
      }
      cfg.limit = ls;
    }
  }
  if (!rd.issues.empty()) throw ConfigError(rd.issues);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"", 0, 0, "cannot read " + path}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string to_string(VertexStyle s) {
  switch (s) {
    case VertexStyle::solid: return "solid";
    case VertexStyle::crossed: return "crossed";
    case VertexStyle::open: return "open";
    case VertexStyle::undetermined: return "undetermined";
  }
  return "?";
}

// ---------------------------------------------------------------- root combinations

Vec parse_root_combination(const LieAlgebra& la, const CartanFrame& f, const std::string& s) {
  const RootSystem& rs = la.roots();
  std::size_t n = la.dim(), r = la.rank(), pos = 0;
  Vec out(n);
  auto fail = [&](const std::string& why) -> std::invalid_argument {
    return std::invalid_argument(why + " at offset " + std::to_string(pos) + " in '" + s + "'");
  };
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto number = [&]() -> mpq_class {
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (start == pos) throw fail("expected a number");
    mpq_class q;
    if (q.set_str(s.substr(start, pos - start), 10) != 0 || q.get_den() == 0) throw fail("bad rational");
    q.canonicalize();
    return q;
  };
  bool first = true;
  skip();
  if (pos == s.size()) throw fail("empty combination");
  while (true) {
    skip();
    if (pos == s.size()) break;
    mpq_class sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected + or -");
    }
    first = false;
    mpq_class coeff = 1;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
      bool paren = s[pos] == '(';
      if (paren) ++pos, skip();
      mpq_class csign = 1;
      if (paren && pos < s.size() && s[pos] == '-') csign = -1, ++pos;
      coeff = csign * number();
      skip();
      if (paren) {
        if (pos >= s.size() || s[pos] != ')') throw fail("expected )");
        ++pos;
        skip();
      }
      if (pos >= s.size() || s[pos] != '*') throw fail("expected *");
      ++pos;
      skip();
    }
    if (pos + 1 >= s.size() || (s[pos] != 'X' && s[pos] != 'H') || s[pos + 1] != '[') throw fail("expected X[...] or H[...]");
    char kind = s[pos];
    pos += 2;
    std::vector<long> coords;
    while (true) {
      skip();
      std::size_t start = pos;
      if (pos < s.size() && s[pos] == '-') ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos || (pos == start + 1 && s[start] == '-')) throw fail("expected an integer");
      coords.push_back(std::stol(s.substr(start, pos - start)));
      skip();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        break;
      }
      throw fail("expected , or ]");
    }
    Cyclo8 c(sign * coeff);
    if (kind == 'H') {
      if (coords.size() != 1 || coords[0] < 1 || static_cast<std::size_t>(coords[0]) > r) throw fail("H[i] needs 1 <= i <= rank");
      out[static_cast<std::size_t>(coords[0] - 1)] += c;
      continue;
    }
    if (coords.size() != r) throw fail("root needs " + std::to_string(r) + " coordinates");
    auto a = rs.index_of(IntVec(coords.begin(), coords.end()));
    if (!a) throw fail("not a root");
    Vec v = f.types[*a] == RootType::real ? real_root_vector(f, *a, r, n) : unit_vec(n, la.x_index(*a));
    out = vec_add(out, vec_scale(v, c));
  }
  return out;
}

// ---------------------------------------------------------------- pipeline

Report::Report(RunConfig cfg) : cfg_(std::move(cfg)) {
  auto la = LieAlgebra::build(RootSystem::build(cfg_.type));
  rf_ = std::make_unique<RealForm>(la, GradingDatum{cfg_.grading});
  hasse_ = cartan_hasse(*rf_);
  std::vector<ConfigIssue> issues;
  for (const auto& fx : cfg_.fixtures) {
    RealWeylFixture out;
    try {
      out.frame = resolve_frame(fx.frame);
    } catch (const ConfigError& e) {
      issues.insert(issues.end(), e.issues.begin(), e.issues.end());
      continue;
    }
    for (const auto& w : fx.generators) {
      try {
        la->weyl().parse_word(w);
      } catch (const std::exception&) {
        issues.push_back({"real_weyl_fixtures", fx.frame.line, fx.frame.column, "bad Weyl word '" + w + "'"});
      }
    }
    out.generators = fx.generators;
    out.expected_order = fx.expected_order;
    out.expected_cosets = fx.expected_cosets;
    orbit_opts_.fixtures.push_back(out);
  }
  if (!issues.empty()) throw ConfigError(issues);
  orbit_opts_.search_cap = cfg_.weyl_search_cap;
}

std::size_t Report::resolve_frame(const FrameRef& ref) const {
  const auto& t = ref.text;
  std::size_t count = hasse_.frames.size();
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t j = std::stoul(t);
    if (j < count) return j;
    throw ConfigError({{"frame", ref.line, ref.column, "frame " + t + " does not exist; there are " + std::to_string(count)}});
  }
  if (t == "compact") return 0;
  if (t == "split") {
    std::size_t best = 0;
    for (std::size_t j = 0; j < count; ++j) {
      if (hasse_.frames[j].real_rank >= hasse_.frames[best].real_rank) best = j;
    }
    return best;
  }
  for (std::size_t j = 0; j < count; ++j) {
    if (hasse_.signatures[j] == t) return j;
  }
  throw ConfigError({{"frame", ref.line, ref.column, "no frame with signature '" + t + "'"}});
}

const OrbitSpace& Report::orbits() {
  if (!space_) {
    try {
      space_ = std::make_unique<OrbitSpace>(*rf_, hasse_, orbit_opts_);
    } catch (const std::invalid_argument& e) {
      // Raised for fixture generators that do not respect the real structure.
      throw ConfigError({{"real_weyl_fixtures", 0, 0, e.what()}});
    }
    // A fixture states an expectation; missing it means the computation and the claim disagree.
    for (const auto& fx : orbit_opts_.fixtures) {
      std::size_t order = space_->real_weyl(fx.frame).group.size();
      std::size_t cosets = space_->cosets(fx.frame).reps.size();
      if (fx.expected_order && *fx.expected_order != order) {
        throw ConsistencyError("frame " + std::to_string(fx.frame) + ": real Weyl group has order " +
                               std::to_string(order) + ", fixture expects " + std::to_string(*fx.expected_order));
      }
      if (fx.expected_cosets && *fx.expected_cosets != cosets) {
        throw ConsistencyError("frame " + std::to_string(fx.frame) + ": " + std::to_string(cosets) +
                               " double cosets, fixture expects " + std::to_string(*fx.expected_cosets));
      }
    }
    std::vector<ConfigIssue> issues;
    for (const auto& d : cfg_.dotted_edges) {
      for (const auto& label : {d.from, d.to}) {
        const auto& recs = space_->records();
        if (std::none_of(recs.begin(), recs.end(), [&](const OrbitRecord& r) { return r.label == label; })) {
          issues.push_back({"dotted_edges", d.line, d.column, "no orbit labelled '" + label + "'"});
        }
      }
    }
    if (!issues.empty()) throw ConfigError(issues);
  }
  return *space_;
}

const std::vector<StratumClass>& Report::classes() {
  if (classes_) return *classes_;
  const OrbitSpace& space = orbits();
  const LieAlgebra& la = rf_->algebra();
  PolarizabilityOptions opts;
  opts.height = cfg_.search_height;
  opts.cap = cfg_.search_cap;
  static const std::vector<mpq_class> samples{1, 2, 10};
  std::vector<StratumClass> out;
  for (std::size_t k = 0; k < space.records().size(); ++k) {
    const OrbitRecord& rec = space.records()[k];
    const CartanFrame& f = hasse_.frames[rec.frame];
    StratumClass sc;
    sc.polarizability = polarizability(space, k, opts);
    sc.cuspidality = cuspidality(space, k);
    if (sc.polarizability.witness) {
      const Vec& w = *sc.polarizability.witness;
      FlagPoint fp = space.flag_point(rec.frame, rec.rep);
      Filtration fl = hodge_filtration(bigraded_pieces(fp, la.dim(), la.rank()), la.dim());
      if (!nilpotent_orbit_consistency(la, f.m, fl, w, samples).all_pass()) {
        throw ConsistencyError("polarizing element of " + rec.label + " fails the nilpotent-orbit test");
      }
      sc.witness_consistent = true;
      if (!vec_is_zero(w)) {
        StratumLimit lim = limit_from_stratum(la, f.m, fp, w);
        MixedFlagData m = deligne_bigrading(lim.f_tilde, weight_filtration(la, lim.n), f.m);
        if (!m.is_split) throw ConsistencyError("limit built on " + rec.label + " is not split");
        sc.dimensions = dimension_report(la, lim.n, m);
        if (!sc.dimensions->orbit_formula_holds) throw ConsistencyError("orbit dimension formula fails for " + rec.label);
      }
    }
    out.push_back(std::move(sc));
  }
  classes_ = std::move(out);
  return *classes_;
}

EnhancedHasseDiagram Report::diagram() {
  const OrbitSpace& space = orbits();
  const auto& cls = classes();
  const auto& recs = space.records();
  EnhancedHasseDiagram d;
  std::ostringstream title;
  title << cfg_.type << " grading (";
  for (std::size_t i = 0; i < cfg_.grading.size(); ++i) title << (i ? "," : "") << cfg_.grading[i];
  title << ")";
  d.title = title.str();
  std::size_t base = space.base_orbit();
  for (std::size_t k = 0; k < recs.size(); ++k) {
    HasseVertex v{k, recs[k].label, recs[k].codim, VertexStyle::open};
    if (k == base) {
      v.style = VertexStyle::solid;
    } else if (recs[k].boundary) {
      switch (cls[k].polarizability.verdict) {
        case Polarizability::polarizable: v.style = VertexStyle::solid; break;
        case Polarizability::not_polarizable: v.style = VertexStyle::crossed; break;
        case Polarizability::undetermined: v.style = VertexStyle::undetermined; break;
      }
    }
    d.vertices.push_back(v);
  }
  // Only covering relations are drawn: an incidence implied by a longer chain is dropped,
  // and parallel incidences collapse to one edge (cayley before cross before closure).
  std::vector<std::vector<std::size_t>> adj(recs.size());
  for (const auto& e : space.edges()) adj[e.from].push_back(e.to);
  auto implied = [&](std::size_t a, std::size_t b) {
    std::vector<bool> seen(recs.size(), false);
    std::vector<std::size_t> stack;
    for (auto y : adj[a]) {
      if (y != b && !seen[y]) seen[y] = true, stack.push_back(y);
    }
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      if (x == b) return true;
      for (auto y : adj[x]) {
        if (!seen[y]) seen[y] = true, stack.push_back(y);
      }
    }
    return false;
  };
  auto dotted = [&](std::size_t a, std::size_t b) {
    return std::any_of(cfg_.dotted_edges.begin(), cfg_.dotted_edges.end(), [&](const DottedEdge& x) {
      return (x.from == recs[a].label && x.to == recs[b].label) || (x.from == recs[b].label && x.to == recs[a].label);
    });
  };
  std::map<std::pair<std::size_t, std::size_t>, const OrbitEdge*> chosen;
  for (const auto& e : space.edges()) {
    if (implied(e.from, e.to)) continue;
    auto [it, fresh] = chosen.try_emplace({e.from, e.to}, &e);
    const OrbitEdge* old = it->second;
    if (!fresh && (e.kind < old->kind || (e.kind == old->kind && e.certified && !old->certified))) it->second = &e;
  }
  for (const auto& e : space.edges()) {
    auto it = chosen.find({e.from, e.to});
    if (it != chosen.end() && it->second == &e) d.edges.push_back({e.from, e.to, e.kind, e.certified, dotted(e.from, e.to)});
  }
  for (const auto& x : cfg_.dotted_edges) {
    auto a = space.find_label(x.from), b = space.find_label(x.to);
    bool present = std::any_of(d.edges.begin(), d.edges.end(), [&](const HasseEdge& e) {
      return (e.from == a && e.to == b) || (e.from == b && e.to == a);
    });
    if (!present) throw ConfigError({{"dotted_edges", x.line, x.column, "no edge between " + x.from + " and " + x.to}});
  }
  return d;
}

LimitResult Report::limit() {
  if (!cfg_.limit) throw ConfigError({{"limit", 0, 0, "this subcommand needs a 'limit' section"}});
  const LimitSpec& spec = *cfg_.limit;
  const OrbitSpace& space = orbits();
  const LieAlgebra& la = rf_->algebra();
  const RootSystem& rs = la.roots();
  std::size_t dim = la.dim(), r = la.rank();
  LimitResult out;
  out.frame = resolve_frame(spec.frame);
  const CartanFrame& f = hasse_.frames[out.frame];
  auto bad_n = [&](const std::string& why) { return ConfigError({{"limit.n", spec.n_line, spec.n_column, why}}); };
  try {
    out.n = parse_root_combination(la, f, spec.n);
  } catch (const std::invalid_argument& e) {
    throw bad_n(e.what());
  }
  if (vec_is_zero(out.n)) throw bad_n("N is zero");
  if (!is_ad_nilpotent(la, out.n)) throw bad_n("N is not nilpotent");
  if (f.conjugate(out.n) != out.n) throw bad_n("N is not real in frame " + std::to_string(out.frame));
  Sl2Triple t = jm_triple(la, out.n);
  if (t.y_in_cartan) {
    std::vector<std::size_t> levi;
    for (std::size_t a = 0; a < rs.size(); ++a) {
      if (la.bracket(t.y, unit_vec(dim, la.x_index(a))) == Vec(dim)) levi.push_back(a);
    }
    out.levi_type = root_subsystem_type(rs, levi);
  }
  WeightFiltration w = weight_filtration(la, out.n);
  const WeylGroup& wg = la.weyl();
  if (spec.w == "auto") {
    // Prefer a flag that N polarizes; otherwise the first one whose weights N induces.
    std::optional<std::size_t> found, compatible;
    for (std::size_t x = 0; x < wg.size() && !found; ++x) {
      Bigraded g = bigraded_pieces(space.flag_point(out.frame, x), dim, r);
      if (!polarization_failure(la, f.m, g, out.n)) found = x;
      auto minus = g.find({-1, -1});
      if (!compatible && minus != g.end() && minus->second.contains(out.n) && total_degree_filtration(g, dim).levels == w.levels) {
        compatible = x;
      }
    }
    if (!found) found = compatible;
    if (!found) throw bad_n("no flag point of this frame has N in g^{-1,-1} with weight filtration W(N)");
    out.w = *found;
  } else {
    try {
      out.w = wg.parse_word(spec.w);
    } catch (const std::exception& e) {
      throw ConfigError({{"limit.w", 0, 0, e.what()}});
    }
  }
  Filtration fl = hodge_filtration(bigraded_pieces(space.flag_point(out.frame, out.w), dim, r), dim);
  try {
    out.mixed = deligne_bigrading(fl, w, f.m);
  } catch (const std::invalid_argument& e) {
    throw bad_n(std::string("the flag and W(N) do not form a mixed Hodge structure: ") + e.what());
  }
  if (!out.mixed.is_split) throw bad_n("the mixed Hodge structure is not split over R");
  out.polarization_problem = polarization_failure(la, f.m, out.mixed.i, out.n);
  out.limit = naive_limit(out.mixed);
  // Coordinates of the limit, when every root vector sits in one piece.
  std::vector<long> p(rs.size()), q(rs.size());
  bool located = true;
  for (std::size_t a = 0; a < rs.size() && located; ++a) {
    Vec x = unit_vec(dim, la.x_index(a));
    located = false;
    for (const auto& [pq, s] : out.limit.g) {
      if (s.contains(x)) {
        p[a] = pq.first, q[a] = pq.second, located = true;
        break;
      }
    }
  }
  if (located) out.target_w = locate_flag(space, out.frame, p, q);
  if (out.target_w) {
    out.target_orbit = space.orbit_of(out.frame, *out.target_w);
    out.target_cuspidality = cuspidality(space, *out.target_orbit);
  }
  if (!out.polarization_problem) out.dimensions = dimension_report(la, out.n, out.mixed);
  return out;
}

// ---------------------------------------------------------------- emitters

namespace {

Json dim_table_json(const DimTable& t) {
  Json a = Json::array();
  for (const auto& [pq, d] : t) {
    if (d) a.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
  }
  return a;
}

DimTable to_table(const Bigrading& b) {
  DimTable t;
  for (const auto& [pq, d] : b.dims) {
    if (d) t[pq] = d;
  }
  return t;
}

Json header(const Report& r, const std::string& kind) {
  Json g = Json::array();
  for (int v : r.config().grading) g.push_back(v);
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"type", r.config().type}, {"grading", g}};
}

std::string root_text(const RootSystem& rs, std::size_t a) {
  std::string s = "[";
  const IntVec& v = rs.root(a);
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::string word(const LieAlgebra& la, std::size_t w) { return la.weyl()[w].word_string(); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

Json dimension_json(const DimensionReport& d) {
  return {{"h", dim_table_json(d.h)},
          {"centralizer", dim_table_json(d.z)},
          {"primitive", dim_table_json(d.h_prim)},
          {"d", d.d},
          {"c", d.c},
          {"dim_boundary_component", d.dim_b},
          {"dim_boundary_component_real", d.dim_b_real},
          {"dim_naive_image", d.dim_b_hat},
          {"dim_nilpotent_orbit_domain", d.dim_d_n},
          {"dim_orbit_real", d.dim_orbit},
          {"orbit_formula_holds", d.orbit_formula_holds},
          {"alpha", d.alpha},
          {"beta", d.beta},
          {"gamma", d.gamma}};
}

Json cusp_json(const RootSystem& rs, const CuspidalityReport& c) {
  Json roots = Json::array();
  for (auto a : c.levi_roots) roots.push_back(root_text(rs, a));
  return {{"cuspidal", c.cuspidal},
          {"levi_type", c.levi_type},
          {"levi_roots", roots},
          {"inverse_cayley_steps", c.cayley_steps},
          {"split_rank", c.split_rank}};
}

void unknown_format(const std::string& format, const std::string& cmd) {
  throw ConfigError({{"format", 0, 0, "format '" + format + "' is not available for " + cmd}});
}

}  // namespace

std::string emit_dot(const EnhancedHasseDiagram& d) {
  std::ostringstream os;
  os << "graph " << quote(d.title) << " {\n";
  os << "  rankdir=TB;\n  node [shape=circle, width=0.25, fixedsize=true, fontsize=10];\n";
  std::map<long, std::vector<std::size_t>> ranks;
  for (std::size_t k = 0; k < d.vertices.size(); ++k) {
    const auto& v = d.vertices[k];
    ranks[v.rank].push_back(k);
    os << "  " << quote(v.label) << " [xlabel=" << quote(v.label) << ", ";
    switch (v.style) {
      case VertexStyle::solid: os << "label=\"\", style=filled, fillcolor=black"; break;
      case VertexStyle::crossed: os << "label=\"x\", style=solid"; break;
      case VertexStyle::open: os << "label=\"\", style=solid"; break;
      case VertexStyle::undetermined: os << "label=\"?\", style=dashed"; break;
    }
    os << ", codim=" << v.rank << ", class=" << to_string(v.style) << "];\n";
  }
  for (const auto& [rank, ks] : ranks) {
    os << "  { rank=same;";
    for (auto k : ks) os << " " << quote(d.vertices[k].label) << ";";
    os << " }\n";
  }
  for (const auto& e : d.edges) {
    os << "  " << quote(d.vertices[e.from].label) << " -- " << quote(d.vertices[e.to].label) << " [kind=" << to_string(e.kind);
    std::string style = e.dotted ? "dotted" : e.kind == EdgeKind::cross ? "dashed" : e.kind == EdgeKind::wolf_closed ? "bold" : "solid";
    os << ", style=" << style;
    if (!e.certified) os << ", color=gray, label=\"?\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_ascii(const EnhancedHasseDiagram& d) {
  std::ostringstream os;
  os << "enhanced Hasse diagram: " << d.title << "\n";
  std::map<long, std::vector<std::size_t>> ranks;
  for (std::size_t k = 0; k < d.vertices.size(); ++k) ranks[d.vertices[k].rank].push_back(k);
  auto mark = [](VertexStyle s) {
    switch (s) {
      case VertexStyle::solid: return "(*)";
      case VertexStyle::crossed: return "(x)";
      case VertexStyle::open: return "( )";
      case VertexStyle::undetermined: return "(?)";
    }
    return "   ";
  };
  for (const auto& [rank, ks] : ranks) {
    os << "codim " << std::setw(2) << rank << ":";
    for (auto k : ks) os << "  " << mark(d.vertices[k].style) << " " << d.vertices[k].label;
    os << "\n";
  }
  os << "edges:\n";
  for (const auto& e : d.edges) {
    os << "  " << d.vertices[e.from].label << " -- " << d.vertices[e.to].label << "  " << to_string(e.kind);
    if (e.dotted) os << " dotted";
    if (!e.certified) os << " uncertified";
    os << "\n";
  }
  os << "legend: (*) solid  (x) crossed  ( ) open  (?) undetermined\n";
  return os.str();
}

std::string emit_mhd(const DimTable& h) {
  long pmin = 0, pmax = 0, qmin = 0, qmax = 0;
  for (const auto& [pq, d] : h) {
    if (!d) continue;
    pmin = std::min(pmin, pq.first), pmax = std::max(pmax, pq.first);
    qmin = std::min(qmin, pq.second), qmax = std::max(qmax, pq.second);
  }
  std::ostringstream os;
  os << " q\\p";
  for (long p = pmin; p <= pmax; ++p) os << std::setw(4) << p;
  os << "\n";
  for (long q = qmax; q >= qmin; --q) {
    os << std::setw(4) << q;
    for (long p = pmin; p <= pmax; ++p) {
      auto it = h.find({p, q});
      std::string cell = it == h.end() || !it->second ? "." : std::to_string(it->second);
      if (p == 0 && q == 0) cell = "[" + cell + "]";
      os << std::setw(4) << cell;
    }
    os << "\n";
  }
  return os.str();
}

std::string emit_mhd_dot(const DimTable& h, const std::string& name) {
  std::ostringstream os;
  os << "graph " << quote(name) << " {\n  layout=neato;\n  node [shape=circle, fixedsize=true, width=0.35];\n";
  for (const auto& [pq, d] : h) {
    if (!d) continue;
    os << "  " << quote(std::to_string(pq.first) + "," + std::to_string(pq.second)) << " [label=\"" << d << "\", pos=\""
       << pq.first << "," << pq.second << "!\"" << (pq.first == 0 && pq.second == 0 ? ", peripheries=2" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string render_cartans(Report& r, const std::string& format) {
  const CartanHasse& h = r.hasse();
  const RootSystem& rs = r.real_form().algebra().roots();
  if (format == "json") {
    Json j = header(r, "cartans");
    Json frames = Json::array();
    for (std::size_t k = 0; k < h.frames.size(); ++k) {
      const auto& f = h.frames[k];
      frames.push_back({{"index", k},
                        {"signature", h.signatures[k]},
                        {"real_rank", f.real_rank},
                        {"real", f.count(RootType::real)},
                        {"compact_imaginary", f.count(RootType::compact_imaginary)},
                        {"noncompact_imaginary", f.count(RootType::noncompact_imaginary)},
                        {"complex", f.count(RootType::complex)}});
    }
    Json edges = Json::array();
    for (const auto& e : h.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"root", root_text(rs, e.root)}});
    j["frames"] = frames;
    j["edges"] = edges;
    return dump(j);
  }
  std::ostringstream os;
  if (format == "ascii") {
    os << "Cartan classes: " << h.frames.size() << "\n";
    for (std::size_t k = 0; k < h.frames.size(); ++k) os << "  H" << k << "  " << h.signatures[k] << "\n";
    os << "Cayley transforms:\n";
    for (const auto& e : h.edges) os << "  H" << e.from << " -> H" << e.to << "  via " << root_text(rs, e.root) << "\n";
    return os.str();
  }
  if (format == "dot") {
    os << "digraph \"cartans\" {\n  rankdir=TB;\n";
    for (std::size_t k = 0; k < h.frames.size(); ++k) {
      os << "  \"H" << k << "\" [label=\"H" << k << "\\nreal rank " << h.frames[k].real_rank << "\"];\n";
    }
    for (const auto& e : h.edges) os << "  \"H" << e.from << "\" -> \"H" << e.to << "\" [label=" << quote(root_text(rs, e.root)) << "];\n";
    os << "}\n";
    return os.str();
  }
  unknown_format(format, "cartans");
  return {};
}

std::string render_orbits(Report& r, const std::string& format) {
  const OrbitSpace& s = r.orbits();
  const LieAlgebra& la = r.real_form().algebra();
  const auto& recs = s.records();
  if (format == "dot") return emit_dot(r.diagram());
  if (format == "json") {
    Json j = header(r, "orbits");
    Json frames = Json::array();
    for (std::size_t k = 0; k < r.hasse().frames.size(); ++k) {
      const auto& g = s.real_weyl(k);
      frames.push_back({{"index", k},
                        {"signature", r.hasse().signatures[k]},
                        {"real_weyl_order", g.group.size()},
                        {"real_weyl_complete", g.complete},
                        {"real_weyl_reason", g.reason},
                        {"double_cosets", s.cosets(k).reps.size()}});
    }
    j["frames"] = frames;
    j["complete_flag"] = s.complete_flag();
    j["base_orbit"] = recs[s.base_orbit()].label;
    Json orbits = Json::array();
    for (const auto& rec : recs) {
      Json members = Json::array();
      for (const auto& [fr, w] : rec.members) members.push_back({{"frame", fr}, {"w", word(la, w)}});
      orbits.push_back({{"label", rec.label},
                        {"codim", rec.codim},
                        {"frame", rec.frame},
                        {"w", word(la, rec.rep)},
                        {"members", members},
                        {"open", rec.open},
                        {"closed", rec.closed},
                        {"boundary", rec.boundary},
                        {"hodge_tate", rec.hodge_tate},
                        {"hpq", dim_table_json(to_table(rec.hpq))}});
    }
    j["orbits"] = orbits;
    Json edges = Json::array();
    for (const auto& e : s.edges()) {
      edges.push_back({{"from", recs[e.from].label},
                       {"to", recs[e.to].label},
                       {"kind", to_string(e.kind)},
                       {"root", e.root ? Json(root_text(la.roots(), *e.root)) : Json(nullptr)},
                       {"certified", e.certified}});
    }
    j["edges"] = edges;
    return dump(j);
  }
  if (format == "ascii") {
    std::ostringstream os;
    os << "orbits: " << recs.size() << " (base " << recs[s.base_orbit()].label << ")\n";
    for (const auto& rec : recs) {
      os << "  " << std::left << std::setw(12) << rec.label << std::right << " codim " << std::setw(2) << rec.codim << "  frame "
         << rec.frame << "  w " << std::left << std::setw(8) << word(la, rec.rep) << std::right;
      if (rec.open) os << " open";
      if (rec.closed) os << " closed";
      if (rec.boundary) os << " boundary";
      if (rec.hodge_tate) os << " hodge-tate";
      os << "\n";
    }
    if (!s.real_weyl_complete()) os << "warning: some real Weyl groups are lower bounds; orbit counts may be too large\n";
    if (s.uncertain_edges()) os << "warning: " << s.uncertain_edges() << " uncertified edges\n";
    return os.str();
  }
  unknown_format(format, "orbits");
  return {};
}

std::string render_hasse(Report& r, const std::string& format) {
  EnhancedHasseDiagram d = r.diagram();
  if (format == "dot") return emit_dot(d);
  if (format == "ascii") return emit_ascii(d);
  if (format == "json") {
    Json j = header(r, "hasse");
    Json v = Json::array(), e = Json::array();
    for (const auto& x : d.vertices) v.push_back({{"label", x.label}, {"codim", x.rank}, {"style", to_string(x.style)}});
    for (const auto& x : d.edges) {
      e.push_back({{"from", d.vertices[x.from].label},
                   {"to", d.vertices[x.to].label},
                   {"kind", to_string(x.kind)},
                   {"certified", x.certified},
                   {"dotted", x.dotted}});
    }
    j["vertices"] = v;
    j["edges"] = e;
    return dump(j);
  }
  unknown_format(format, "hasse");
  return {};
}

std::string render_mhd(Report& r, const std::string& format) {
  const OrbitSpace& s = r.orbits();
  if (format == "json") {
    Json j = header(r, "mhd");
    Json a = Json::array();
    for (const auto& rec : s.records()) {
      DimTable t = to_table(rec.hpq);
      std::map<long, std::size_t> columns;
      for (const auto& [pq, d] : t) columns[pq.first] += d;
      Json cs = Json::array();
      for (const auto& [p, d] : columns) cs.push_back({{"p", p}, {"sum", d}});
      a.push_back({{"label", rec.label}, {"hpq", dim_table_json(t)}, {"column_sums", cs}});
    }
    j["orbits"] = a;
    return dump(j);
  }
  std::ostringstream os;
  for (const auto& rec : s.records()) {
    if (format == "ascii") {
      os << rec.label << " (codim " << rec.codim << ")\n" << emit_mhd(to_table(rec.hpq)) << "\n";
    } else if (format == "dot") {
      os << emit_mhd_dot(to_table(rec.hpq), rec.label);
    } else {
      unknown_format(format, "mhd");
    }
  }
  return os.str();
}

std::string render_classify(Report& r, const std::string& format) {
  const OrbitSpace& s = r.orbits();
  const auto& cls = r.classes();
  const LieAlgebra& la = r.real_form().algebra();
  const auto& recs = s.records();
  if (format == "dot") return emit_dot(r.diagram());
  std::size_t undetermined = 0;
  for (const auto& c : cls) undetermined += c.polarizability.verdict == Polarizability::undetermined;
  if (format == "json") {
    Json j = header(r, "classify");
    j["search_height"] = r.config().search_height;
    j["search_cap"] = r.config().search_cap;
    j["undetermined"] = undetermined;
    Json a = Json::array();
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const auto& rec = recs[k];
      const auto& c = cls[k];
      Json item = {{"label", rec.label},
                   {"codim", rec.codim},
                   {"open", rec.open},
                   {"closed", rec.closed},
                   {"boundary", rec.boundary},
                   {"hodge_tate", rec.hodge_tate},
                   {"polarizable", to_string(c.polarizability.verdict)},
                   {"reason", c.polarizability.reason},
                   {"candidates", c.polarizability.candidates},
                   {"witness", c.polarizability.witness ? Json(describe_vector(la, *c.polarizability.witness)) : Json(nullptr)},
                   {"witness_frame", rec.frame},
                   {"witness_passes_orbit_test", c.witness_consistent},
                   {"cuspidality", cusp_json(la.roots(), c.cuspidality)},
                   {"rational_boundary_component", "not evaluated: needs a rational structure"}};
      item["dimensions"] = c.dimensions ? dimension_json(*c.dimensions) : Json(nullptr);
      a.push_back(item);
    }
    j["orbits"] = a;
    return dump(j);
  }
  if (format == "ascii") {
    std::ostringstream os;
    for (std::size_t k = 0; k < recs.size(); ++k) {
      const auto& c = cls[k];
      os << std::left << std::setw(12) << recs[k].label << std::right << " codim " << std::setw(2) << recs[k].codim << "  "
         << std::left << std::setw(15) << to_string(c.polarizability.verdict) << std::right << "  "
         << (c.cuspidality.cuspidal ? "cuspidal" : "not cuspidal") << " (Levi " << c.cuspidality.levi_type << ")";
      if (recs[k].hodge_tate) os << "  hodge-tate";
      os << "\n";
      if (c.polarizability.witness && !vec_is_zero(*c.polarizability.witness)) {
        os << "    N = " << describe_vector(la, *c.polarizability.witness) << "\n";
      }
      if (c.polarizability.verdict == Polarizability::undetermined) os << "    UNDETERMINED: " << c.polarizability.reason << "\n";
    }
    return os.str();
  }
  unknown_format(format, "classify");
  return {};
}

std::string render_limit(Report& r, const std::string& format) {
  LimitResult L = r.limit();
  const LieAlgebra& la = r.real_form().algebra();
  const auto& recs = r.orbits().records();
  DimTable flipped = dims(L.limit.g);
  std::string target = L.target_orbit ? recs[*L.target_orbit].label : "";
  if (format == "json") {
    Json j = header(r, "limit");
    Json gr = Json::array();
    WeightFiltration w = L.mixed.w;
    for (long k = w.lo; k <= w.hi(); ++k) {
      if (w.gr_dim(k)) gr.push_back({{"k", k}, {"dim", w.gr_dim(k)}});
    }
    j["frame"] = L.frame;
    j["w"] = word(la, L.w);
    j["n"] = describe_vector(la, L.n);
    j["weight_graded_dims"] = gr;
    j["centralizer_levi_type"] = L.levi_type;
    j["deligne_hpq"] = dim_table_json(L.mixed.h);
    j["split"] = L.mixed.is_split;
    j["polarized"] = !L.polarization_problem;
    j["polarization_problem"] = L.polarization_problem ? Json(*L.polarization_problem) : Json(nullptr);
    j["naive_limit_hpq"] = dim_table_json(flipped);
    j["naive_limit_w"] = L.target_w ? Json(word(la, *L.target_w)) : Json(nullptr);
    j["naive_limit_orbit"] = L.target_orbit ? Json(target) : Json(nullptr);
    j["naive_limit_cuspidality"] = L.target_cuspidality ? cusp_json(la.roots(), *L.target_cuspidality) : Json(nullptr);
    j["dimensions"] = L.dimensions ? dimension_json(*L.dimensions) : Json(nullptr);
    return dump(j);
  }
  if (format == "ascii") {
    std::ostringstream os;
    os << "frame " << L.frame << ", w " << word(la, L.w) << "\nN = " << describe_vector(la, L.n) << "\n";
    if (!L.levi_type.empty()) os << "centralizer of the neutral element: " << L.levi_type << "\n";
    os << "limiting mixed Hodge structure " << (L.polarization_problem ? "(NOT polarized: " + *L.polarization_problem + ")" : "(polarized)")
       << "\n"
       << emit_mhd(L.mixed.h) << "naive limit (antidiagonal flip)\n"
       << emit_mhd(flipped);
    if (L.target_orbit) os << "naive limit lies in " << target << "\n";
    if (L.target_cuspidality) {
      os << "that stratum is " << (L.target_cuspidality->cuspidal ? "cuspidal" : "not cuspidal") << " (Levi "
         << L.target_cuspidality->levi_type << ")\n";
    }
    if (L.dimensions) {
      const auto& d = *L.dimensions;
      os << "d = " << d.d << ", c = " << d.c << ", dim O = " << d.dim_orbit << (d.orbit_formula_holds ? " = 2d - c" : " != 2d - c")
         << "\ndim B(N) = " << d.dim_b << ", real " << d.dim_b_real << ", naive image " << d.dim_b_hat << "\n";
    }
    return os.str();
  }
  if (format == "dot") return emit_mhd_dot(flipped, "naive limit");
  unknown_format(format, "limit");
  return {};
}

}  // namespace strataforge
