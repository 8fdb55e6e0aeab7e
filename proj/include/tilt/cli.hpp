#pragma once

// Command-line front end: tiltwb <command> [args]. Exit codes: 0 success,
// 1 domain error (not tilting, not rigid, no complement, budget...), 2 usage
// or malformed input. With --format json every command writes exactly one
// JSON document to stdout, errors included.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tilt/acceptance.hpp"
#include "tilt/exchange_graph.hpp"
#include "tilt/rigid_set.hpp"
#include "tilt/seeds.hpp"
#include "tilt/server.hpp"

namespace tilt::cli {

using nlohmann::json;

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What a command produced: JSON for machine mode, text for humans.
struct Output {
  json data;
  std::string text;
  int exit_code = 0;
};

struct Options {
  std::string weights, quiver, window, format = "text", suite = "all", from, to, pin, at, matrix, host = "127.0.0.1",
                                      static_dir, output;
  std::vector<std::string> args;
  std::optional<std::size_t> budget, depth;
  std::optional<int> index;
  std::uint64_t seed = acceptance::Options{}.seed;
  int port = 8080;
  int idle_timeout = 1800;
};

inline SearchWindow parse_window(const std::string& text) {
  if (text.empty()) return SearchWindow::automatic();
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw usage_error("");
    std::size_t u1 = 0, u2 = 0;
    std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    long long lo = std::stoll(a, &u1), hi = std::stoll(b, &u2);
    if (u1 != a.size() || u2 != b.size() || lo > hi) throw usage_error("");
    return SearchWindow::range(lo, hi);
  } catch (const std::exception&) {
    throw usage_error("--window expects 'lo,hi' with lo <= hi");
  }
}

/// "A | B | C" or separate arguments.
template <ExchangeBackend B>
SetOf<B> parse_set(const B& b, const std::vector<std::string>& parts) {
  std::vector<typename B::object_type> elems;
  for (const auto& part : parts) {
    std::size_t pos = 0;
    while (pos <= part.size()) {
      std::size_t bar = part.find('|', pos);
      if (bar == std::string::npos) bar = part.size();
      std::string tok = part.substr(pos, bar - pos);
      if (tok.find_first_not_of(" \t") != std::string::npos) elems.push_back(b.parse(tok));
      pos = bar + 1;
    }
  }
  return SetOf<B>(std::move(elems));
}

template <class F>
Output with_backend(const Options& o, F&& f) {
  if (!o.weights.empty() && !o.quiver.empty()) throw usage_error("give either --weights or --quiver, not both");
  if (!o.weights.empty()) return f(CohBackend(WeightType::parse(o.weights)));
  if (!o.quiver.empty()) return f(DynkinBackend(AcyclicQuiver::parse(o.quiver)));
  throw usage_error("this command needs --weights or --quiver");
}

template <class Object>
json elements_json(const RigidSet<Object>& s) {
  json a = json::array();
  for (const auto& x : s) a.push_back(x.to_string());
  return a;
}

template <class Object>
Output graph_output(const ExchangeGraph<Object>& g, const std::string& format) {
  Output out;
  out.data = to_json(g);
  if (format == "dot") {
    out.text = to_dot(g);
  } else {
    std::ostringstream os;
    os << "nodes: " << g.node_count() << "\nedges: " << g.edge_count() << "\nfrontier: " << g.frontier.size() << "\n";
    if (!g.errors.empty()) os << "nodes with failed mutations: " << g.errors.size() << "\n";
    for (const auto& [k, _] : g.nodes) os << (g.frontier.count(k) ? "* " : "  ") << k << "\n";
    out.text = os.str();
  }
  return out;
}

inline Output cmd_classify(const Options& o) {
  if (o.args.size() != 1) throw usage_error("classify takes one weight type, e.g. \"(2,3,6)\"");
  WeightType w = WeightType::parse(o.args[0]);
  auto g = genus(w);
  Output out;
  out.data = {{"weights", w.to_string()}, {"kind", to_string(g.kind)}, {"genus", to_string(g.value)}, {"rank_g0", rank_g0(w)}};
  out.text = std::string(to_string(g.kind)) + ", g=" + to_string(g.value) + ", rank G0 = " + std::to_string(rank_g0(w)) + "\n";
  return out;
}

inline Output cmd_hom_ext(const Options& o, bool hom) {
  if (o.args.size() != 2) throw usage_error(std::string(hom ? "hom" : "ext") + " takes two objects");
  return with_backend(o, [&](const auto& b) {
    auto x = b.parse(o.args[0]), y = b.parse(o.args[1]);
    std::int64_t v;
    if constexpr (std::is_same_v<std::decay_t<decltype(b)>, CohBackend>) {
      v = hom ? hom_dim(x, y) : ext1_dim(x, y);
    } else {
      if (hom) throw usage_error("hom is available for --weights only");
      v = b.ext1(x, y);
    }
    Output out;
    out.data = {{hom ? "hom" : "ext1", v}, {"from", x.to_string()}, {"to", y.to_string()}};
    out.text = std::to_string(v) + "\n";
    return out;
  });
}

inline Output cmd_tilt_check(const Options& o) {
  return with_backend(o, [&](const auto& b) {
    auto s = parse_set(b, o.args);
    Output out;
    const bool rigid = is_rigid_set(b, s), tilting = rigid && s.size() == b.tilting_size();
    out.data = {{"key", s.key()}, {"rigid", rigid}, {"tilting", tilting}, {"size", s.size()}, {"required", b.tilting_size()}};
    if (tilting) {
      out.text = "tilting: " + s.key() + "\n";
    } else if (rigid) {
      out.text = "rigid, not tilting (" + std::to_string(s.size()) + " of " + std::to_string(b.tilting_size()) + " summands)\n";
    } else {
      std::string why;
      for (std::size_t i = 0; i < s.size() && why.empty(); ++i)
        for (std::size_t j = i; j < s.size() && why.empty(); ++j)
          if (b.ext1(s[i], s[j]) != 0) why = "Ext^1(" + s[i].to_string() + ", " + s[j].to_string() + ") = " + std::to_string(b.ext1(s[i], s[j]));
          else if (b.ext1(s[j], s[i]) != 0) why = "Ext^1(" + s[j].to_string() + ", " + s[i].to_string() + ") = " + std::to_string(b.ext1(s[j], s[i]));
      out.text = "not rigid: " + why + "\n";
    }
    out.exit_code = tilting ? 0 : 1;
    return out;
  });
}

inline Output cmd_mutate(const Options& o) {
  return with_backend(o, [&](const auto& b) {
    auto s = parse_set(b, o.args);
    std::size_t k;
    if (!o.at.empty()) {
      auto idx = s.index_of(b.parse(o.at));
      if (!idx) throw usage_error("--at names an object that is not in the set");
      k = *idx;
    } else if (o.index) {
      if (*o.index < 1 || static_cast<std::size_t>(*o.index) > s.size()) throw usage_error("--index out of range (1-based)");
      k = static_cast<std::size_t>(*o.index - 1);
    } else {
      throw usage_error("mutate needs --at <object> or --index <position>");
    }
    auto m = mutate(b, s, k, parse_window(o.window));
    Output out;
    out.data = {{"out", m.out.to_string()}, {"in", m.in.to_string()}, {"key", m.result.key()}, {"elements", elements_json(m.result)}};
    out.text = m.out.to_string() + " -> " + m.in.to_string() + "\n" + m.result.key() + "\n";
    return out;
  });
}

inline ExploreLimits limits(const Options& o, std::optional<std::size_t> default_depth) {
  ExploreLimits l;
  if (o.budget) l.max_nodes = *o.budget;
  if (o.depth)
    l.max_depth = *o.depth;
  else if (!o.budget && default_depth)
    l.max_depth = *default_depth;
  return l;
}

inline Output cmd_explore(const Options& o) {
  return with_backend(o, [&](const auto& b) {
    auto start = o.args.empty() ? canonical_tilting(b) : parse_set(b, o.args);
    // Infinite graphs need a bound; Dynkin graphs are finite.
    std::optional<std::size_t> dflt;
    if (b.uses_window()) dflt = 3;
    return graph_output(explore(b, start, limits(o, dflt), parse_window(o.window)), o.format);
  });
}

inline Output cmd_path(const Options& o) {
  if (o.to.empty()) throw usage_error("path needs --to <set>");
  return with_backend(o, [&](const auto& b) {
    auto from = o.from.empty() ? canonical_tilting(b) : parse_set(b, {o.from});
    auto to = parse_set(b, {o.to});
    auto path = find_path(b, from, to, parse_window(o.window), o.budget.value_or(100000));
    auto end = replay(b, from, path, parse_window(o.window));
    Output out;
    json steps = json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < path.size(); ++i) {
      steps.push_back({{"out", path[i].out.to_string()}, {"in", path[i].in.to_string()}});
      os << i + 1 << ". " << path[i].out.to_string() << " -> " << path[i].in.to_string() << "\n";
    }
    os << "length " << path.size() << (end == to ? ", replay ok" : ", replay MISMATCH") << "\n";
    out.data = {{"from", from.key()}, {"to", to.key()}, {"steps", steps}, {"replay_ok", end == to}};
    out.text = os.str();
    out.exit_code = end == to ? 0 : 1;
    return out;
  });
}

inline Output cmd_restrict(const Options& o) {
  if (o.pin.empty()) throw usage_error("restrict needs --pin <object>");
  return with_backend(o, [&](const auto& b) {
    auto start = o.args.empty() ? canonical_tilting(b) : parse_set(b, o.args);
    std::optional<std::size_t> dflt;
    if (b.uses_window()) dflt = 3;
    auto g = explore(b, start, limits(o, dflt), parse_window(o.window));
    return graph_output(restrict_to(b, g, b.parse(o.pin)), o.format);
  });
}

inline Output cmd_reach(const Options& o) {
  if (o.args.size() != 2) throw usage_error("reach takes two objects");
  return with_backend(o, [&](const auto& b) {
    auto m = b.parse(o.args[0]), n = b.parse(o.args[1]);
    auto cert = reach(b, m, n, parse_window(o.window));
    const bool ok = verify_certificate(b, cert);
    json chain = json::array();
    std::ostringstream os;
    for (std::size_t i = 0; i < cert.chain.size(); ++i) {
      chain.push_back(cert.chain[i].to_string());
      os << (i ? "  " : "") << cert.chain[i].to_string() << "\n";
    }
    os << (ok ? "certificate verified" : "certificate FAILED verification") << " (" << cert.chain.size() << " objects)\n";
    Output out;
    out.data = {{"chain", chain}, {"verified", ok}};
    out.text = os.str();
    out.exit_code = ok ? 0 : 1;
    return out;
  });
}

inline ExchangeMatrix parse_matrix(const std::string& text) {
  ExchangeMatrix b;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        r.push_back(std::stoi(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw usage_error("");
      } catch (const std::exception&) {
        throw usage_error("--matrix expects rows of integers, e.g. \"0,1;-1,0\"");
      }
    }
    b.push_back(std::move(r));
  }
  try {
    validate_exchange_matrix(b);
  } catch (const domain_error& e) {
    throw usage_error(std::string("--matrix: ") + e.what());
  }
  return b;
}

inline Output cmd_seeds(const Options& o) {
  ExchangeMatrix b;
  if (!o.matrix.empty() && !o.quiver.empty()) throw usage_error("give either --matrix or --quiver");
  if (!o.matrix.empty())
    b = parse_matrix(o.matrix);
  else if (!o.quiver.empty())
    b = AcyclicQuiver::parse(o.quiver).exchange_matrix();
  else
    throw usage_error("seeds needs --quiver or --matrix");
  auto g = seed_explore(initial_seed(b), o.budget.value_or(10000));
  auto vars = cluster_variables(g);
  Output out;
  json v = json::array();
  std::ostringstream os;
  os << "seeds: " << g.nodes.size() << "\nedges: " << g.edges.size() << "\nfrontier: " << g.frontier.size()
     << "\ncluster variables: " << vars.size() << "\n";
  for (const auto& x : vars) {
    v.push_back(x.to_string());
    os << "  " << x.to_string() << "\n";
  }
  out.data = {{"seeds", g.nodes.size()}, {"edges", g.edges.size()}, {"frontier", g.frontier.size()}, {"variables", v}};
  out.text = os.str();
  return out;
}

inline Output cmd_verify(const Options& o) {
  if (!acceptance::suites().count(o.suite)) {
    std::string names;
    for (const auto& [n, _] : acceptance::suites()) names += (names.empty() ? "" : ", ") + n;
    throw usage_error("unknown suite '" + o.suite + "' (available: " + names + ")");
  }
  auto results = acceptance::run_suite(o.suite, acceptance::Options{o.seed});
  Output out;
  out.data = json::array();
  for (const auto& r : results) {
    out.data.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    out.text += acceptance::format_line(r) + "\n";
    if (!r.passed) out.exit_code = 1;
  }
  return out;
}

inline Output cmd_serve(const Options& o, std::ostream& err) {
  server::ExplorerService svc(server::ServiceOptions{std::chrono::seconds(o.idle_timeout)});
  httplib::Server srv;
  server::bind(srv, svc);
  if (!o.static_dir.empty() && !srv.set_mount_point("/", o.static_dir)) throw usage_error("--static: no such directory");
  err << "serving /api/v1/ on http://" << o.host << ":" << o.port << std::endl;
  if (!srv.listen(o.host, o.port)) throw domain_error("could not listen on " + o.host + ":" + std::to_string(o.port));
  return {};
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact workbench for tilting and cluster-tilting combinatorics", "tiltwb"};
  app.require_subcommand(1);
  Options o;

  auto backend = [&](CLI::App* s) {
    s->add_option("--weights", o.weights, "weight type, e.g. \"(2,3)\"");
    s->add_option("--quiver", o.quiver, "Dynkin quiver: A3, D4-alt, E6-rev or \"n; i->j; ...\"");
    s->add_option("--window", o.window, "line-bundle window lo,hi (c-coefficient)");
  };
  auto format = [&](CLI::App* s, bool dot) {
    s->add_option("--format", o.format, "output format")->check(dot ? CLI::IsMember({"text", "json", "dot"}) : CLI::IsMember({"text", "json"}));
  };

  auto* classify = app.add_subcommand("classify", "genus class and rank of a weight type");
  classify->add_option("weights", o.args)->required();
  format(classify, false);

  auto* hom = app.add_subcommand("hom", "dim Hom(A, B) in coh X");
  auto* ext = app.add_subcommand("ext", "dim Ext^1(A, B)");
  for (auto* s : {hom, ext}) {
    s->add_option("objects", o.args)->required();
    backend(s);
    format(s, false);
  }

  auto* tilt = app.add_subcommand("tilt-check", "is the set rigid / tilting (exit 1 if not tilting)");
  tilt->add_option("elements", o.args)->required();
  backend(tilt);
  format(tilt, false);

  auto* mut = app.add_subcommand("mutate", "exchange one summand");
  mut->add_option("elements", o.args)->required();
  auto* at = mut->add_option("--at", o.at, "summand to replace");
  mut->add_option("--index", o.index, "1-based position of the summand in canonical order")->excludes(at);
  backend(mut);
  format(mut, false);

  auto* exp = app.add_subcommand("explore", "breadth-first exchange graph (default start: canonical)");
  exp->add_option("elements", o.args);
  exp->add_option("--budget", o.budget, "node limit");
  exp->add_option("--depth", o.depth, "depth limit (default 3 for coh)");
  exp->add_option("-o,--output", o.output, "write the graph to a file instead of stdout");
  backend(exp);
  format(exp, true);

  auto* path = app.add_subcommand("path", "mutation path between tilting sets");
  path->add_option("--from", o.from, "start set \"A | B | ...\" (default canonical)");
  path->add_option("--to", o.to, "target set")->required();
  path->add_option("--budget", o.budget, "node expansion limit");
  backend(path);
  format(path, false);

  auto* res = app.add_subcommand("restrict", "subgraph of sets containing a pinned summand");
  res->add_option("elements", o.args);
  res->add_option("--pin", o.pin)->required();
  res->add_option("--budget", o.budget, "node limit");
  res->add_option("--depth", o.depth, "depth limit (default 3 for coh)");
  res->add_option("-o,--output", o.output, "write the graph to a file instead of stdout");
  backend(res);
  format(res, true);

  auto* rch = app.add_subcommand("reach", "reachability certificate between exceptional objects");
  rch->add_option("objects", o.args)->required();
  backend(rch);
  format(rch, false);

  auto* seeds = app.add_subcommand("seeds", "seed exploration and cluster variables");
  seeds->add_option("--quiver", o.quiver);
  seeds->add_option("--matrix", o.matrix, "exchange matrix rows, e.g. \"0,2;-2,0\"");
  seeds->add_option("--budget", o.budget, "seed limit (default 10000)");
  format(seeds, false);

  auto* ver = app.add_subcommand("verify", "run an acceptance suite");
  ver->add_option("--suite", o.suite, "suite name (default all)");
  ver->add_option("--seed", o.seed, "random seed");
  format(ver, false);

  auto* srv = app.add_subcommand("serve", "HTTP JSON API under /api/v1/");
  srv->add_option("--port", o.port);
  srv->add_option("--host", o.host);
  srv->add_option("--static", o.static_dir, "directory served at /");
  srv->add_option("--idle-timeout", o.idle_timeout, "session idle timeout in seconds");

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const bool machine = o.format == "json";
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (machine)
      out << json{{"error", msg}, {"kind", kind}, {"exit", code}}.dump() << "\n";
    else
      err << "tiltwb: " << msg << "\n";
    return code;
  };

  try {
    Output r;
    if (classify->parsed()) r = cmd_classify(o);
    else if (hom->parsed()) r = cmd_hom_ext(o, true);
    else if (ext->parsed()) r = cmd_hom_ext(o, false);
    else if (tilt->parsed()) r = cmd_tilt_check(o);
    else if (mut->parsed()) r = cmd_mutate(o);
    else if (exp->parsed()) r = cmd_explore(o);
    else if (path->parsed()) r = cmd_path(o);
    else if (res->parsed()) r = cmd_restrict(o);
    else if (rch->parsed()) r = cmd_reach(o);
    else if (seeds->parsed()) r = cmd_seeds(o);
    else if (ver->parsed()) r = cmd_verify(o);
    else if (srv->parsed()) r = cmd_serve(o, err);
    if (!o.output.empty()) {
      const std::string payload = machine ? r.data.dump(2) + "\n" : r.text;
      std::ofstream file(o.output, std::ios::binary);
      if (!(file << payload)) throw usage_error("cannot write " + o.output);
      r.data = {{"written", o.output}, {"bytes", payload.size()}};
      r.text = "wrote " + o.output + "\n";
    }
    if (machine)
      out << r.data.dump() << "\n";
    else
      out << r.text;
    return r.exit_code;
  } catch (const usage_error& e) {
    return fail(2, "usage", e.what());
  } catch (const parse_error& e) {
    return fail(2, "parse", e.what());
  } catch (const complement_not_in_window& e) {
    return fail(1, std::string("complement-not-in-window:") + e.reason(), e.what());
  } catch (const error& e) {
    return fail(1, "domain", e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace tilt::cli
