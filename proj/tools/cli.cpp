#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <sstream>
#include <variant>

#include "asymtree/asym.hpp"
#include "asymtree/canonical.hpp"
#include "asymtree/error.hpp"
#include "asymtree/generate.hpp"
#include "asymtree/oracle.hpp"
#include "asymtree/presented.hpp"
#include "asymtree/treelike.hpp"

namespace asymtree::cli {
namespace {

// A command that ran to completion without an answer (no set exists, search
// failed); exit status 1.
class DomainFailure : public Error {
 public:
  using Error::Error;
};

using Record = std::vector<std::pair<std::string, std::string>>;

struct Options {
  std::string input;
  std::string format = "plain";
  std::size_t limit = 100;
  std::string set;
  std::size_t depth = 0;
  std::string mode = "plain";
  std::optional<std::size_t> horizon;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

class Printer {
 public:
  Printer(std::ostream& out, bool json) : out_(out), json_(json) {}

  void emit(const Record& record) {
    if (json_) {
      nlohmann::ordered_json line = nlohmann::ordered_json::object();
      for (const auto& [key, value] : record) line[key] = value;
      out_ << line.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < record.size(); ++i) {
      out_ << (i ? " " : "") << record[i].first << '=' << record[i].second;
    }
    out_ << '\n';
  }

  void raw(const std::string& key, const std::string& text) {
    if (json_) {
      emit({{key, text}});
    } else {
      out_ << text;
      if (text.empty() || text.back() != '\n') out_ << '\n';
    }
  }

 private:
  std::ostream& out_;
  bool json_;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path.empty() || path == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw InputError("cannot read " + path);
    buffer << file.rdbuf();
  }
  return buffer.str();
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string set_text(std::span<const std::string> labels, std::span<const Vertex> set) {
  return render_set(labels, set);
}

using AnyTree = std::variant<RootedTree, UnrootedTree>;

AnyTree load_tree(const std::string& text) {
  switch (detect_format(text)) {
    case InputFormat::kRooted:
      return parse_rooted(text);
    case InputFormat::kUnrooted:
      return parse_unrooted(text);
    default:
      throw InputError("expected a rooted or unrooted tree");
  }
}

RootedTree load_rooted(const std::string& text) {
  if (detect_format(text) != InputFormat::kRooted) throw InputError("expected a rooted tree");
  return parse_rooted(text);
}

RootedGraph load_graph(const std::string& text) {
  switch (detect_format(text)) {
    case InputFormat::kGraph:
      return parse_graph(text);
    case InputFormat::kRooted: {
      RootedTree t = parse_rooted(text);
      return RootedGraph{oracle::as_graph(t), t.root()};
    }
    default:
      throw InputError("expected a rooted graph or rooted tree");
  }
}

std::string vertex_name(const std::string& label) { return label.empty() ? "-" : label; }

class Runner {
 public:
  Runner(Options& options, std::istream& in, Printer& printer)
      : opt_(options), in_(in), print_(printer), limits_(oracle::Limits::from_env()) {}

  std::string text() { return read_input(opt_.input, in_); }

  void canon() {
    AnyTree t = load_tree(text());
    if (auto* r = std::get_if<RootedTree>(&t)) {
      print_.emit({{"code", ahu_canonical(*r).token}});
    } else {
      print_.emit({{"code", unrooted_canonical(std::get<UnrootedTree>(t)).token}});
    }
  }

  void similarity_cmd() {
    AnyTree t = load_tree(text());
    RootedTree tree = std::holds_alternative<RootedTree>(t) ? std::get<RootedTree>(t)
                                                              : center_rooted(std::get<UnrootedTree>(t)).tree;
    SimilarityTable table = similarity(tree);
    for (Vertex v : tree.preorder()) {
      for (std::size_t k = 0; k < table[v].size(); ++k) {
        const TwinClass& cls = table[v][k];
        print_.emit({{"vertex", vertex_name(tree.label(v))},
                     {"class", std::to_string(k)},
                     {"representative", tree.label(cls.representative)},
                     {"tau", std::to_string(cls.tau)},
                     {"members", set_text(tree.labels(), cls.members)}});
      }
    }
  }

  void center_cmd() {
    AnyTree t = load_tree(text());
    UnrootedTree tree = std::holds_alternative<UnrootedTree>(t) ? std::get<UnrootedTree>(t)
                                                                : to_unrooted(std::get<RootedTree>(t));
    CenterResult c = center(tree);
    if (c.kind == CenterResult::Kind::kVertex) {
      print_.emit({{"kind", "vertex"}, {"center", tree.label(c.vertex)}});
    } else {
      std::vector<Vertex> ends{c.edge.first, c.edge.second};
      print_.emit({{"kind", "edge"},
                   {"center", set_text(tree.labels(), ends)},
                   {"halves_isomorphic", flag(c.halves_isomorphic)}});
    }
  }

  void count() {
    AnyTree t = load_tree(text());
    Natural c = std::holds_alternative<RootedTree>(t) ? count_rooted(std::get<RootedTree>(t))
                                                      : count_unrooted(std::get<UnrootedTree>(t));
    print_.emit({{"count", c.get_str()}});
  }

  void motion_cmd() {
    AnyTree t = load_tree(text());
    MotionResult m = std::holds_alternative<RootedTree>(t) ? motion_rooted(std::get<RootedTree>(t))
                                                           : motion(std::get<UnrootedTree>(t));
    print_.emit({{"motion", m.str()}});
  }

  void find() {
    AnyTree t = load_tree(text());
    std::visit(
        [&](const auto& tree) {
          auto s = find_asym_set(tree);
          if (!s) throw DomainFailure("no asymmetrizing set exists");
          print_.emit({{"set", set_text(tree.labels(), s->members)}});
        },
        t);
  }

  void enumerate() {
    AnyTree t = load_tree(text());
    std::visit(
        [&](const auto& tree) {
          auto sets = enumerate_asym_sets(tree, opt_.limit);
          for (std::size_t i = 0; i < sets.size(); ++i) {
            print_.emit({{"index", std::to_string(i)}, {"set", set_text(tree.labels(), sets[i].members)}});
          }
        },
        t);
  }

  void verify() {
    AnyTree t = load_tree(text());
    std::visit(
        [&](const auto& tree) {
          auto set = parse_set(opt_.set, tree.labels());
          print_.emit({{"verified", flag(verify_asym_set(tree, set))}});
        },
        t);
  }

  // Oracle commands accept trees and rooted graphs; only rooted trees fix
  // their root.
  void oracle_count() {
    std::string input = text();
    oracle::OrbitCount c;
    switch (detect_format(input)) {
      case InputFormat::kRooted:
        c = oracle::count_asym(parse_rooted(input), limits_);
        break;
      case InputFormat::kUnrooted:
        c = oracle::count_asym(parse_unrooted(input), limits_);
        break;
      case InputFormat::kGraph:
        c = oracle::count_asym(parse_graph(input).graph, std::nullopt, limits_);
        break;
      default:
        throw InputError("expected a tree or rooted graph");
    }
    print_.emit({{"count", std::to_string(c.orbits)},
                 {"trivially_stabilized", std::to_string(c.trivially_stabilized)},
                 {"group_order", std::to_string(c.group_order)}});
  }

  std::pair<oracle::PermutationGroup, std::vector<std::string>> oracle_group() {
    std::string input = text();
    switch (detect_format(input)) {
      case InputFormat::kRooted: {
        RootedTree t = parse_rooted(input);
        return {oracle::tree_automorphisms(t, true, limits_), t.labels()};
      }
      case InputFormat::kUnrooted: {
        UnrootedTree t = parse_unrooted(input);
        return {oracle::tree_automorphisms(t, limits_), t.labels()};
      }
      case InputFormat::kGraph: {
        RootedGraph g = parse_graph(input);
        return {oracle::graph_automorphisms(g.graph, std::nullopt, limits_), g.graph.labels()};
      }
      default:
        throw InputError("expected a tree or rooted graph");
    }
  }

  void oracle_motion() { print_.emit({{"motion", oracle::motion(oracle_group().first).str()}}); }

  void oracle_aut() {
    auto [group, labels] = oracle_group();
    print_.emit({{"order", std::to_string(group.order())}});
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
      std::string map;
      for (Vertex v = 0; v < labels.size(); ++v) {
        Vertex image = group.elements[i][v];
        if (image == v) continue;
        if (!map.empty()) map += ',';
        map += labels[v] + ">" + labels[image];
      }
      print_.emit({{"element", std::to_string(i)}, {"map", map}});
    }
  }

  void presented_classify() {
    presented::TreePresentation p = presented::parse_presentation(text());
    presented::Classification c = presented::classify(p);
    print_.emit({{"kind", presented::to_string(c.kind)}, {"size", c.size.str()}});
    for (std::size_t k = 0; k < p.classes.size(); ++k) {
      print_.emit({{"class", p.classes[k].name},
                   {"size", c.class_size[k].str()},
                   {"reaches_cycle", flag(c.reaches_cycle[k])},
                   {"on_double_ray", flag(c.on_double_ray[k])}});
    }
  }

  void presented_count() {
    presented::PresentedReport r = presented::count_presented(presented::parse_presentation(text()));
    print_.emit({{"count", r.count.str()}, {"theorem", r.theorem}});
  }

  void presented_motion() {
    print_.emit({{"motion", presented::motion_presented(presented::parse_presentation(text())).str()}});
  }

  void presented_rank() {
    print_.emit({{"rank", std::to_string(presented::rank_presented(presented::parse_presentation(text())))}});
  }

  void presented_certificate() {
    auto cert = presented::asym_certificate(presented::parse_presentation(text()), opt_.depth);
    if (!cert) throw DomainFailure("truncation too shallow for inequivalent colorings");
    const RootedTree& t = cert->truncation;
    print_.emit({{"vertices", std::to_string(t.size())},
                 {"boundary", std::to_string(cert->boundary.size())},
                 {"verified", flag(cert->verified)},
                 {"fully_asymmetric", flag(cert->fully_asymmetric)},
                 {"set", set_text(t.labels(), cert->set.members)}});
    print_.emit({{"tree", serialize(t)}});
  }

  void treelike_check() {
    RootedGraph g = load_graph(text());
    std::size_t horizon = opt_.horizon ? *opt_.horizon : eccentricity(g);
    TreelikeCheck c = check_treelike(g, horizon);
    print_.emit({{"passes", flag(c.passes())},
                 {"horizon", std::to_string(c.horizon)},
                 {"failing", set_text(g.graph.labels(), sorted(c.failing))}});
  }

  void treelike_forest() {
    RootedGraph g = load_graph(text());
    ForestDecomposition f = extract_forest(g);
    std::string edges;
    for (auto [parent, child] : f.edges) {
      if (!edges.empty()) edges += ',';
      edges += g.graph.label(parent) + ">" + g.graph.label(child);
    }
    print_.emit({{"edges", edges}, {"components", std::to_string(f.components.size())}});
    for (std::size_t i = 0; i < f.components.size(); ++i) {
      print_.emit({{"component", std::to_string(i)},
                   {"members", set_text(g.graph.labels(), f.components[i])},
                   {"root", flag(i == f.root_component)}});
    }
  }

  void treelike_asymmetrize() {
    RootedGraph g = load_graph(text());
    TreelikeResult r = asymmetrize_treelike(g, limits_);
    if (!r.set) {
      print_.emit({{"failure", to_string(*r.failure)}});
      throw DomainFailure("no admissible asymmetrizing set");
    }
    print_.emit({{"set", set_text(g.graph.labels(), r.set->members)}});
  }

  void contract() {
    RootedTree t = load_rooted(text());
    ContractionMap m = contract_even_levels(t);
    print_.emit({{"contracted", serialize(m.contracted)}});
    std::vector<std::vector<Vertex>> blocks(m.contracted.size());
    for (Vertex v = 0; v < t.size(); ++v) blocks[m.image[v]].push_back(v);
    for (Vertex b : m.contracted.preorder()) {
      print_.emit({{"block", m.contracted.label(b)}, {"members", set_text(t.labels(), blocks[b])}});
    }
  }

  void lift() {
    RootedTree t = load_rooted(text());
    ContractionMap m = contract_even_levels(t);
    auto s_prime = parse_set(opt_.set, m.contracted.labels());
    LiftMode mode = opt_.mode == "augmented" ? LiftMode::kAugmented : LiftMode::kPlain;
    AsymSet s = lift_asym_set(t, m, s_prime, mode);
    print_.emit({{"set", set_text(t.labels(), s.members)},
                 {"verified", flag(verify_asym_set(t, s.members))},
                 {"unexposed", set_text(t.labels(), unexposed(t, s.members))}});
  }

  void random() {
    if (opt_.n == 0) throw InputError("--n must be positive");
    print_.raw("tree", serialize(random_tree(opt_.n, opt_.seed)));
  }

 private:
  static std::vector<Vertex> sorted(std::vector<Vertex> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  static std::size_t eccentricity(const RootedGraph& g) {
    std::vector<std::size_t> dist(g.graph.size(), static_cast<std::size_t>(-1));
    std::queue<Vertex> queue;
    dist[g.root] = 0;
    queue.push(g.root);
    std::size_t far = 0;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop();
      far = std::max(far, dist[v]);
      for (Vertex u : g.graph.neighbors(v)) {
        if (dist[u] != static_cast<std::size_t>(-1)) continue;
        dist[u] = dist[v] + 1;
        queue.push(u);
      }
    }
    return far;
  }

  Options& opt_;
  std::istream& in_;
  Printer& print_;
  oracle::Limits limits_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Asymmetrizing sets of finite and finitely presented trees", "asymtree"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"plain", "json-lines"}));

  std::map<const CLI::App*, std::function<void(Runner&)>> actions;
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& help,
                     std::function<void(Runner&)> action) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("input", opt.input, "Input file; standard input when omitted or -");
    actions[sub] = std::move(action);
    return sub;
  };

  command(&app, "canon", "Canonical code", &Runner::canon);
  command(&app, "similarity", "Twin classes of every vertex's children", &Runner::similarity_cmd);
  command(&app, "center", "Center vertex or edge", &Runner::center_cmd);
  command(&app, "count", "Number of inequivalent asymmetrizing sets", &Runner::count);
  command(&app, "motion", "Least number of vertices moved by an automorphism", &Runner::motion_cmd);
  command(&app, "find", "First asymmetrizing set", &Runner::find);
  command(&app, "enumerate", "Inequivalent asymmetrizing sets in canonical order", &Runner::enumerate)
      ->add_option("--limit", opt.limit, "Maximum number of sets");
  command(&app, "verify", "Check that a set asymmetrizes the tree", &Runner::verify)
      ->add_option("--set", opt.set, "Comma-separated labels")
      ->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force counterparts");
  oracle_cmd->require_subcommand(1);
  command(oracle_cmd, "count", "Orbit count by subset sweep", &Runner::oracle_count);
  command(oracle_cmd, "motion", "Motion from the explicit group", &Runner::oracle_motion);
  command(oracle_cmd, "aut", "Explicit automorphism group", &Runner::oracle_aut);

  CLI::App* presented_cmd = app.add_subcommand("presented", "Finitely presented trees");
  presented_cmd->require_subcommand(1);
  command(presented_cmd, "classify", "Ray structure and sizes", &Runner::presented_classify);
  command(presented_cmd, "count", "Number of inequivalent asymmetrizing sets", &Runner::presented_count);
  command(presented_cmd, "motion", "Motion of the unfolding", &Runner::presented_motion);
  command(presented_cmd, "rank", "Rank of a rayless presentation", &Runner::presented_rank);
  command(presented_cmd, "certificate", "Asymmetrizing coloring of a truncation", &Runner::presented_certificate)
      ->add_option("--depth", opt.depth, "Truncation depth")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* treelike_cmd = app.add_subcommand("treelike", "Tree-like rooted graphs");
  treelike_cmd->require_subcommand(1);
  command(treelike_cmd, "check", "Private-child condition up to a horizon", &Runner::treelike_check)
      ->add_option("--horizon", opt.horizon, "Interior radius; the root's eccentricity by default");
  command(treelike_cmd, "forest", "Unique-parent spanning forest", &Runner::treelike_forest);
  command(treelike_cmd, "asymmetrize", "Admissible asymmetrizing set", &Runner::treelike_asymmetrize);

  command(&app, "contract", "Contract even-depth vertices with their children", &Runner::contract);
  CLI::App* lift_cmd = command(&app, "lift", "Lift a set of the contracted tree", &Runner::lift);
  lift_cmd->add_option("--mode", opt.mode, "plain or augmented")->check(CLI::IsMember({"plain", "augmented"}));
  lift_cmd->add_option("--set", opt.set, "Labels of contracted vertices")->required();

  CLI::App* random_cmd = app.add_subcommand("random-tree", "Reproducible random rooted tree");
  random_cmd->add_option("--n", opt.n, "Number of vertices")->required();
  random_cmd->add_option("--seed", opt.seed, "Generator seed");
  actions[random_cmd] = &Runner::random;

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  auto action = actions.find(leaf);
  if (action == actions.end()) {
    err << "missing subcommand\n";
    return 2;
  }

  Printer printer(out, opt.format == "json-lines");
  Runner runner(opt, in, printer);
  try {
    action->second(runner);
    return 0;
  } catch (const asymtree::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace asymtree::cli
