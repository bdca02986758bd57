#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypercurv/hypercurv.hpp"
#include "hypercurv/io.hpp"

using namespace hypercurv;

namespace {

enum Exit { kOk = 0, kViolated = 1, kInvalid = 2, kLimit = 3 };

struct Request {
  std::string command;
  std::string path;
  std::vector<std::string> pairs;
  std::vector<std::string> edges;
  bool all = false;
  std::string vertex;
  std::string side;
  std::string direction = "out";
  long index = -1;
};

template <class S>
Json value(const S& x) {
  if constexpr (is_exact_v<S>) return scalar_traits<S>::format(x);
  else return x;
}

template <class S>
Json optional_value(const std::optional<S>& x) {
  return x ? value(*x) : Json(nullptr);
}

template <class S>
std::string text(const S& x) {
  return scalar_traits<S>::format(x);
}

template <class S>
std::string text(const std::optional<S>& x, const char* missing = "") {
  return x ? scalar_traits<S>::format(*x) : std::string(missing);
}

template <class S>
Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  j["mode"] = std::string(scalar_traits<S>::mode);
  if (!is_exact_v<S>) j["tolerance"] = cfg.tol;
  return j;
}

template <class S>
std::string header_line(const std::string& command, const RunConfig& cfg, const char* lead) {
  std::string out = std::string(lead) + "hypercurv " + command + " mode=" + std::string(scalar_traits<S>::mode);
  if (!is_exact_v<S>) out += " tolerance=" + scalar_traits<double>::format(cfg.tol);
  return out + "\n";
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "--pair expects a,b");
  return {s.substr(0, comma), s.substr(comma + 1)};
}

std::vector<Target> requested_targets(const Document& doc, const Request& req, const auto& hg) {
  std::vector<Target> out;
  if (req.all) {
    out = all_targets(hg);
    return out;
  }
  for (const auto& p : req.pairs) {
    auto [a, b] = split_pair(p);
    VertexId u = resolve_vertex(doc, a), v = resolve_vertex(doc, b);
    if (u == v) throw Error(ErrorCode::SamePair, "pair " + p + " repeats a vertex");
    if (hg.flavor() == Flavor::undirected && v < u) std::swap(u, v);
    out.push_back(PairTarget{u, v});
  }
  for (const auto& e : req.edges) out.push_back(EdgeTarget{resolve_edge(doc, e)});
  if (out.empty()) throw Error(ErrorCode::UnknownTarget, "no target given (use --pair, --edge or --all)");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class S>
int cmd_validate(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, std::string& out) {
  if (cfg.format == OutputFormat::json) {
    Json j = header<S>("validate", cfg);
    j["valid"] = true;
    j["flavor"] = std::string(to_string(hg.flavor()));
    j["vertex_count"] = hg.vertex_count();
    j["edge_count"] = hg.edge_count();
    j["document"] = serialize(doc);
    out = j.dump(2) + "\n";
  } else {
    const char* lead = cfg.format == OutputFormat::csv ? "# " : "";
    out = header_line<S>("validate", cfg, lead);
    out += std::string(lead) + "valid " + std::string(to_string(hg.flavor())) + " hypergraph, " +
           std::to_string(hg.vertex_count()) + " vertices, " + std::to_string(hg.edge_count()) + " hyperedges\n";
  }
  return kOk;
}

template <class S>
int cmd_distances(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, std::string& out) {
  const auto d = all_pairs_distances(hg);
  const auto n = hg.vertex_count();
  if (cfg.format == OutputFormat::json) {
    Json j = header<S>("distances", cfg);
    j["vertices"] = doc.vertex_names;
    j["symmetric"] = d.symmetric();
    j["diameter"] = value(diameter(d));
    Json rows = Json::array();
    for (VertexId u = 0; u < n; ++u) {
      Json row = Json::array();
      for (VertexId v = 0; v < n; ++v) row.push_back(value(d(u, v)));
      rows.push_back(std::move(row));
    }
    j["distances"] = std::move(rows);
    out = j.dump(2) + "\n";
  } else if (cfg.format == OutputFormat::csv) {
    out = header_line<S>("distances", cfg, "# ") + csv_row({"u", "v", "distance"});
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v) out += csv_row({doc.vertex_names[u], doc.vertex_names[v], text(d(u, v))});
  } else {
    std::vector<std::string> head{""};
    for (const auto& name : doc.vertex_names) head.push_back(name);
    TextTable t(head);
    for (VertexId u = 0; u < n; ++u) {
      std::vector<std::string> row{doc.vertex_names[u]};
      for (VertexId v = 0; v < n; ++v) row.push_back(text(d(u, v)));
      t.add(std::move(row));
    }
    out = header_line<S>("distances", cfg, "") + t.str() + "diameter " + text(diameter(d)) + "\n";
  }
  return kOk;
}

template <class S>
int cmd_measure(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, const Request& req,
                std::string& out) {
  if (!cfg.alpha) throw Error(ErrorCode::ParseError, "measure needs --alpha");
  const S alpha = scalar_traits<S>::from_rational(*cfg.alpha);
  Measure<S> mu;
  std::string label;
  if (!req.vertex.empty()) {
    const VertexId x = resolve_vertex(doc, req.vertex);
    if (hg.flavor() == Flavor::undirected) {
      mu = measure_undirected(hg, x, alpha);
      label = "mu_" + doc.vertex_names[x];
    } else {
      if (req.direction != "in" && req.direction != "out")
        throw Error(ErrorCode::ParseError, "--direction expects in or out");
      mu = measure_oriented_pair(hg, x, req.direction == "in" ? Direction::in : Direction::out, alpha);
      label = "mu_" + doc.vertex_names[x] + "^" + req.direction;
    }
  } else if (!req.edges.empty()) {
    const EdgeId e = resolve_edge(doc, req.edges.front());
    if (req.side != "tail" && req.side != "head") throw Error(ErrorCode::ParseError, "--side expects tail or head");
    const Side side = req.side == "tail" ? Side::tail : Side::head;
    if (req.index < 0) {
      mu = measure_set(hg, e, side, alpha);
      label = "mu_" + edge_name(doc, e) + "^" + req.side;
    } else {
      const auto i = static_cast<std::size_t>(req.index);
      mu = side == Side::tail ? measure_directed_in(hg, e, i, alpha) : measure_directed_out(hg, e, i, alpha);
      label = "mu_" + edge_name(doc, e) + "^" + req.side + "[" + std::to_string(i) + "]";
    }
  } else {
    throw Error(ErrorCode::UnknownTarget, "measure needs --vertex or --edge with --side");
  }

  if (cfg.format == OutputFormat::json) {
    Json j = header<S>("measure", cfg);
    j["measure"] = label;
    j["alpha"] = value(alpha);
    Json mass = Json::object();
    for (const auto& [v, m] : mu.mass) mass[doc.vertex_names[v]] = value(m);
    j["mass"] = std::move(mass);
    j["total"] = value(mu.total());
    out = j.dump(2) + "\n";
  } else if (cfg.format == OutputFormat::csv) {
    out = header_line<S>("measure", cfg, "# ") + csv_row({"vertex", "mass"});
    for (const auto& [v, m] : mu.mass) out += csv_row({doc.vertex_names[v], text(m)});
  } else {
    TextTable t({"vertex", "mass"});
    for (const auto& [v, m] : mu.mass) t.add({doc.vertex_names[v], text(m)});
    out = header_line<S>("measure", cfg, "") + label + " at alpha " + text(alpha) + "\n" + t.str();
  }
  return kOk;
}

template <class S>
Json target_json(const Document& doc, const Target& t) {
  Json j;
  if (const auto* p = std::get_if<PairTarget>(&t)) {
    j["pair"] = Json::array({doc.vertex_names[p->u], doc.vertex_names[p->v]});
  } else {
    j["edge"] = edge_name(doc, std::get<EdgeTarget>(t).edge);
  }
  return j;
}

template <class S>
int cmd_curvature(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, const Request& req,
                  std::string& out) {
  const auto targets = requested_targets(doc, req, hg);
  const auto d = all_pairs_distances(hg);
  const auto grid = cfg.alpha ? std::vector<S>{scalar_traits<S>::from_rational(*cfg.alpha)} : cfg.grid_as<S>();
  LimitOptions<S> opts;
  opts.tol = cfg.tol;
  const auto reports = parallel_map(targets.size(), cfg.threads, [&](std::size_t i) {
    return curvature_report(hg, d, targets[i], grid, cfg.variant, opts);
  });

  if (cfg.format == OutputFormat::json) {
    Json j = header<S>("curvature", cfg);
    j["variant"] = std::string(to_string(hg.flavor() == Flavor::undirected ? cfg.variant : LengthVariant::min));
    Json arr = Json::array();
    for (const auto& r : reports) {
      Json t = target_json<S>(doc, r.target);
      Json curve = Json::array();
      for (const auto& s : r.curve) {
        Json c;
        c["alpha"] = value(s.alpha);
        c["kappa"] = value(s.kappa);
        c["normalized"] = optional_value(s.normalized);
        curve.push_back(std::move(c));
      }
      t["curve"] = std::move(curve);
      t["lly"] = optional_value(r.limit.lly);
      t["diverges"] = r.limit.diverges;
      t["kappa_one"] = value(r.limit.kappa_one);
      t["slope"] = value(r.limit.slope);
      t["stabilization_alpha"] = value(r.limit.stabilization_alpha);
      t["stabilization_k"] = r.limit.stabilization_k;
      arr.push_back(std::move(t));
    }
    j["targets"] = std::move(arr);
    out = j.dump(2) + "\n";
  } else if (cfg.format == OutputFormat::csv) {
    out = header_line<S>("curvature", cfg, "# ") + csv_row({"target", "alpha", "kappa", "normalized"});
    for (const auto& r : reports) {
      const auto name = describe(doc, r.target);
      for (const auto& s : r.curve) out += csv_row({name, text(s.alpha), text(s.kappa), text(s.normalized)});
      out += csv_row({name, "lly", text(r.limit.kappa_one), text(r.limit.lly, "-inf")});
    }
  } else {
    TextTable t({"target", "lly", "kappa_1", "slope", "stabilized at"});
    for (const auto& r : reports)
      t.add({describe(doc, r.target), text(r.limit.lly, "-inf"), text(r.limit.kappa_one), text(r.limit.slope),
             text(r.limit.stabilization_alpha)});
    out = header_line<S>("curvature", cfg, "") + t.str();
  }
  return kOk;
}

template <class S>
int cmd_bounds(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, std::string& out) {
  const auto d = all_pairs_distances(hg);
  LedgerConfig<S> lc;
  lc.grid = cfg.alpha ? std::vector<S>{scalar_traits<S>::from_rational(*cfg.alpha)} : cfg.grid_as<S>();
  lc.variant = cfg.variant;
  lc.limit.tol = cfg.tol;
  lc.threads = cfg.threads;
  lc.tol = cfg.tol;
  const auto ledger = bounds_ledger(hg, d, lc);

  std::size_t counts[3] = {0, 0, 0};
  for (const auto& v : ledger) ++counts[static_cast<int>(v.status)];
  const bool failed = counts[1] > 0 || (cfg.strict && counts[2] > 0);

  auto target = [&](const BoundVerdict<S>& v) { return v.target ? describe(doc, *v.target) : std::string(); };
  if (cfg.format == OutputFormat::json) {
    Json j = header<S>("bounds", cfg);
    j["variant"] = std::string(to_string(hg.flavor() == Flavor::undirected ? cfg.variant : LengthVariant::min));
    Json arr = Json::array();
    for (const auto& v : ledger) {
      Json e;
      e["name"] = v.name;
      e["target"] = v.target ? target_json<S>(doc, *v.target) : Json(nullptr);
      e["alpha"] = optional_value(v.alpha);
      e["lhs"] = v.status == VerdictStatus::not_applicable ? Json(nullptr) : value(v.lhs);
      e["rhs"] = v.status == VerdictStatus::not_applicable ? Json(nullptr) : value(v.rhs);
      e["status"] = std::string(to_string(v.status));
      if (!v.detail.empty()) e["detail"] = v.detail;
      if (!v.note.empty()) e["note"] = v.note;
      arr.push_back(std::move(e));
    }
    j["verdicts"] = std::move(arr);
    j["summary"] = {{"holds", counts[0]}, {"violated", counts[1]}, {"not_applicable", counts[2]}};
    out = j.dump(2) + "\n";
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : ledger) {
      const bool na = v.status == VerdictStatus::not_applicable;
      rows.push_back({v.name, target(v), text(v.alpha), na ? "" : text(v.lhs), na ? "" : text(v.rhs),
                      std::string(to_string(v.status)), v.detail.empty() ? v.note : v.detail});
    }
    std::vector<std::string> head{"bound", "target", "alpha", "lhs", "rhs", "status", "detail"};
    if (cfg.format == OutputFormat::csv) {
      out = header_line<S>("bounds", cfg, "# ") + csv_row(head);
      for (const auto& r : rows) out += csv_row(r);
    } else {
      TextTable t(head);
      for (auto& r : rows) t.add(std::move(r));
      out = header_line<S>("bounds", cfg, "") + t.str();
      out += std::to_string(counts[0]) + " hold, " + std::to_string(counts[1]) + " violated, " +
             std::to_string(counts[2]) + " not applicable\n";
    }
  }
  return failed ? kViolated : kOk;
}

template <class S>
int cmd_sweep(const Document& doc, const Hypergraph<S>& hg, const RunConfig& cfg, const Request& req, bool format_set,
              std::string& out) {
  const auto targets = requested_targets(doc, req, hg);
  if (targets.size() != 1) throw Error(ErrorCode::UnknownTarget, "sweep takes exactly one --pair or --edge");
  const auto d = all_pairs_distances(hg);
  LimitOptions<S> opts;
  opts.tol = cfg.tol;
  const auto grid = cfg.grid_as<S>();
  const auto r = curvature_report(hg, d, targets.front(), grid, cfg.variant, opts);
  auto rows = r.curve;
  const S a_star = r.limit.stabilization_alpha;
  const S k_star = kappa_alpha(hg, d, targets.front(), a_star, cfg.variant);
  rows.push_back({a_star, k_star, S(k_star / (S(1) - a_star))});

  const auto format = format_set ? cfg.format : OutputFormat::csv;
  if (format == OutputFormat::json) {
    Json j = header<S>("sweep", cfg);
    j["target"] = target_json<S>(doc, targets.front());
    Json arr = Json::array();
    for (const auto& s : rows)
      arr.push_back({{"alpha", value(s.alpha)}, {"kappa", value(s.kappa)}, {"normalized", optional_value(s.normalized)}});
    j["rows"] = std::move(arr);
    j["lly"] = optional_value(r.limit.lly);
    out = j.dump(2) + "\n";
  } else if (format == OutputFormat::csv) {
    out = header_line<S>("sweep", cfg, "# ") + csv_row({"alpha", "kappa", "normalized"});
    for (const auto& s : rows) out += csv_row({text(s.alpha), text(s.kappa), text(s.normalized)});
  } else {
    TextTable t({"alpha", "kappa", "normalized"});
    for (const auto& s : rows) t.add({text(s.alpha), text(s.kappa), text(s.normalized)});
    out = header_line<S>("sweep", cfg, "") + describe(doc, targets.front()) + "\n" + t.str();
  }
  return kOk;
}

template <class S>
int dispatch(Document doc, const RunConfig& cfg, const Request& req, bool format_set, std::string& out) {
  const auto hg = build<S>(doc);
  if (req.command == "validate") return cmd_validate(doc, hg, cfg, out);
  if (req.command == "distances") return cmd_distances(doc, hg, cfg, out);
  if (req.command == "measure") return cmd_measure(doc, hg, cfg, req, out);
  if (req.command == "curvature") return cmd_curvature(doc, hg, cfg, req, out);
  if (req.command == "bounds") return cmd_bounds(doc, hg, cfg, out);
  return cmd_sweep(doc, hg, cfg, req, format_set, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ollivier and Lin-Lu-Yau curvature of hypergraphs"};
  app.require_subcommand(1);

  Request req;
  RunConfig cfg;
  std::string alpha, grid, variant = "sum", format = "json";
  bool use_float = false, use_exact = false;
  long parallel = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", req.path, "hypergraph JSON document")->required();
    sub->add_option("--alpha", alpha, "single alpha (p/q or decimal)");
    sub->add_option("--alpha-grid", grid, "comma-separated alpha values");
    sub->add_option("--variant", variant, "undirected hyperedge length: min, sum or max")
        ->check(CLI::IsMember({"min", "sum", "max"}));
    auto* fl = sub->add_flag("--float", use_float, "double arithmetic with tolerance");
    auto* ex = sub->add_flag("--exact", use_exact, "exact rational arithmetic (default)");
    fl->excludes(ex);
    sub->add_option("--tol", cfg.tol, "float comparison tolerance");
    sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--parallel", parallel, "worker threads");
    sub->add_flag("--strict", cfg.strict, "treat not-applicable verdicts as failures");
  };
  auto targets = [&](CLI::App* sub) {
    sub->add_option("--pair", req.pairs, "vertex pair a,b")->allow_extra_args(false);
    sub->add_option("--edge", req.edges, "hyperedge name or index")->allow_extra_args(false);
  };

  auto* validate = app.add_subcommand("validate", "check a document");
  common(validate);
  auto* distances = app.add_subcommand("distances", "all-pairs hyperpath distances");
  common(distances);
  auto* measure = app.add_subcommand("measure", "random-walk measure");
  common(measure);
  measure->add_option("--vertex", req.vertex, "base vertex");
  measure->add_option("--direction", req.direction, "in or out (oriented pair measures)");
  measure->add_option("--edge", req.edges, "hyperedge name or index")->allow_extra_args(false);
  measure->add_option("--side", req.side, "tail or head");
  measure->add_option("--index", req.index, "constituent index within the side");
  auto* curvature = app.add_subcommand("curvature", "alpha curve and LLY limit per target");
  common(curvature);
  targets(curvature);
  curvature->add_flag("--all", req.all, "every pair and hyperedge");
  auto* bounds = app.add_subcommand("bounds", "verdict ledger of every applicable bound");
  common(bounds);
  auto* sweep = app.add_subcommand("sweep", "alpha, kappa, kappa/(1-alpha) rows for one target");
  common(sweep);
  targets(sweep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  bool format_set = false;
  for (auto* sub : app.get_subcommands()) {
    req.command = sub->get_name();
    format_set = sub->count("--format") > 0;
  }

  try {
    if (!alpha.empty()) cfg.alpha = parse_alpha(alpha);
    if (!grid.empty()) cfg.grid = parse_alpha_grid(grid);
    cfg.variant = parse_length_variant(variant);
    cfg.format = parse_output_format(format);
    cfg.exact = !use_float;
    if (parallel <= 0) {
      if (const char* env = std::getenv("HYPERCURV_THREADS")) parallel = std::atol(env);
    }
    cfg.threads = parallel > 0 ? static_cast<unsigned>(parallel) : 1;
    cfg.validate();

    std::string out;
    Document doc = read_document(req.path);
    const int rc = cfg.exact ? dispatch<Rational>(std::move(doc), cfg, req, format_set, out)
                             : dispatch<double>(std::move(doc), cfg, req, format_set, out);
    std::cout << out;
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::NoStabilization ? kLimit : kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
