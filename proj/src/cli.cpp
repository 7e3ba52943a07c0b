#include "forestcalc/cli.hpp"

#include "forestcalc/accessibility.hpp"
#include "forestcalc/digraph.hpp"
#include "forestcalc/forest_calculus.hpp"
#include "forestcalc/inverses.hpp"
#include "forestcalc/json_io.hpp"
#include "forestcalc/markov.hpp"
#include "forestcalc/oracle.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace forestcalc {

namespace {

struct Options {
  std::string command;
  std::string format = "pretty";
  std::string mode;  // rational | float; empty = env or rational
  std::string out_path;
  std::string input_path;

  std::string tau = "1";
  std::string alpha;
  std::string q;
  std::string arc;        // "tail,head" labels
  std::string delta_eps = "1";
  std::string start;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  int partitions = 1;
  bool nonstrict = false;
  bool skip_monotonicity = false;
  int fixture_n = 0, fixture_k = 0, fixture_kprime = 0;
};

WeightedDigraph load_digraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_digraph(buf.str());
}

int require_vertex(const WeightedDigraph& g, const std::string& label) {
  int v = g.vertex(label);
  if (v < 0) throw Error("unknown vertex \"" + label + "\"");
  return v;
}

std::pair<int, int> parse_arc(const WeightedDigraph& g, const std::string& spec) {
  auto comma = spec.find(',');
  if (comma == std::string::npos) throw Error("arc must be written TAIL,HEAD");
  return {require_vertex(g, spec.substr(0, comma)), require_vertex(g, spec.substr(comma + 1))};
}

// ---- command bodies, templated over the scalar field ----

template <class S>
Json cmd_info(const WeightedDigraph& g) {
  StructureReport rep = analyze_structure(g);
  GershgorinReport gr = gershgorin(g);
  auto label_list = [&g](const std::vector<int>& vs) {
    Json a = Json::array();
    for (int v : vs) a.push_back(g.labels()[v]);
    return a;
  };
  Json j;
  j["vertices"] = g.order();
  j["arcs"] = g.arcs().size();
  j["labels"] = g.labels();
  Json weak = Json::array();
  for (const auto& c : rep.weak_components) weak.push_back(label_list(c));
  j["weak_components"] = std::move(weak);
  Json knots = Json::array();
  for (const auto& k : rep.undominated_knots) knots.push_back(label_list(k));
  j["undominated_knots"] = std::move(knots);
  j["k_tilde"] = label_list(rep.k_tilde);
  Json basins = Json::array();
  for (const auto& b : rep.k_plus) basins.push_back(label_list(b));
  j["k_plus"] = std::move(basins);
  j["out_dimension"] = rep.out_dim;
  j["in_dimension"] = rep.in_dim;
  Json discs = Json::array();
  for (const auto& d : gr.discs)
    discs.push_back(Json{{"center", rational_string(d.center)}, {"radius", rational_string(d.radius)}});
  j["gershgorin"] = Json{{"discs", std::move(discs)},
                         {"all_in_right_half_plane", gr.all_in_right_half_plane},
                         {"every_disc_touches_zero", gr.every_disc_touches_zero},
                         {"intersection_is_zero", gr.intersection_is_zero},
                         {"has_undominated_vertex", gr.has_undominated_vertex}};
  return j;
}

template <class S>
Json cmd_forests(const WeightedDigraph& g, const Matrix<S>** csv_matrix_out,
                 std::vector<Matrix<S>>& keep_alive) {
  ForestSequence<S> seq = forest_sequence<S>(g);
  NormalizedForests<S> nf = max_forest_matrix(seq);
  Json j;
  j["out_dimension"] = seq.v;
  Json sig = Json::array();
  for (const S& x : seq.sigma) sig.push_back(scalar_traits<S>::to_string(x));
  j["sigma"] = std::move(sig);
  j["s"] = scalar_traits<S>::to_string(seq.s);
  Json sp = Json::array();
  for (const S& x : seq.s_partial) sp.push_back(scalar_traits<S>::to_string(x));
  j["s_partial"] = std::move(sp);
  j["kirchhoff"] = matrix_json(seq.L, g.labels());
  Json qs = Json::array();
  for (const auto& qk : seq.Q) qs.push_back(matrix_json(qk, g.labels()));
  j["Q"] = std::move(qs);
  j["Jbar"] = matrix_json(nf.Jbar, g.labels());
  keep_alive.push_back(nf.Jbar);
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
Json cmd_qtau(const WeightedDigraph& g, const Rational& tau_r, const Matrix<S>** csv_matrix_out,
              std::vector<Matrix<S>>& keep_alive) {
  S tau = scalar_traits<S>::from_rational(tau_r);
  ForestSequence<S> seq = forest_sequence<S>(g);
  Matrix<S> q = q_tau(g, tau);
  Json j;
  j["tau"] = rational_string(tau_r);
  j["out_dimension"] = seq.v;
  j["s_tau"] = scalar_traits<S>::to_string(s_of_tau(seq, tau));
  j["routes_agree"] = true;  // q_tau would have thrown otherwise
  j["Q_tau"] = matrix_json(q, g.labels());
  Matrix<S> p1 = q.transposed();
  j["P1"] = matrix_json(p1, g.labels());
  keep_alive.push_back(std::move(p1));
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
Json cmd_limit(const WeightedDigraph& g) {
  std::vector<S> schedule;
  for (const Rational& t : default_tau_schedule())
    schedule.push_back(scalar_traits<S>::from_rational(t));
  LimitReport<S> rep = group_inverse_limit(g, schedule);
  Json j;
  Json steps = Json::array();
  for (std::size_t i = 0; i < rep.taus.size(); ++i)
    steps.push_back(Json{{"tau", scalar_traits<S>::to_string(rep.taus[i])},
                         {"distance", scalar_traits<S>::to_double(rep.distances[i])}});
  j["schedule"] = std::move(steps);
  j["monotone"] = rep.monotone;
  j["final_below_1e-6"] = rep.final_below_tol;
  return j;
}

template <class S>
Json cmd_ginv(const WeightedDigraph& g, const Rational& alpha_r, const Matrix<S>** csv_matrix_out,
              std::vector<Matrix<S>>& keep_alive) {
  if (alpha_r.is_zero()) throw Error("alpha must be nonzero");
  S alpha = scalar_traits<S>::from_rational(alpha_r);
  Matrix<S> lsharp = group_inverse(g, alpha);
  PenroseFlags flags = penrose_report(kirchhoff<S>(g), lsharp);
  Json j;
  j["alpha"] = rational_string(alpha_r);
  j["routes_agree"] = true;
  j["alpha_independent"] = true;
  j["group_inverse"] = matrix_json(lsharp, g.labels());
  j["penrose"] = penrose_json(flags);
  keep_alive.push_back(std::move(lsharp));
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
Json cmd_pinv(const WeightedDigraph& g, const Matrix<S>** csv_matrix_out,
              std::vector<Matrix<S>>& keep_alive) {
  InverseBundle<S> b = inverse_bundle<S>(g);
  Json j;
  j["moore_penrose"] = matrix_json(b.moore_penrose, g.labels());
  j["penrose"] = penrose_json(b.mp_flags);
  j["z_matrix"] = matrix_json(b.z_matrix, g.labels());
  j["group_inverse_penrose"] = penrose_json(b.group_flags);
  keep_alive.push_back(std::move(b.moore_penrose));
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
Json cmd_markov(const WeightedDigraph& g, const Options& opt, const Matrix<S>** csv_matrix_out,
                std::vector<Matrix<S>>& keep_alive) {
  if (opt.alpha.empty()) throw Error("markov needs --alpha");
  if (opt.q.empty()) throw Error("markov needs --q");
  Rational alpha_r = parse_rational(opt.alpha);
  Rational q_r = parse_rational(opt.q);
  RelatedChain<S> chain = related_chain(g, scalar_traits<S>::from_rational(alpha_r));
  ObservationResult<S> obs = observation_matrix(chain, scalar_traits<S>::from_rational(q_r));
  Json j;
  j["alpha"] = rational_string(alpha_r);
  j["q"] = rational_string(q_r);
  j["tau"] = scalar_traits<S>::to_string(obs.tau);
  j["stochastic"] = chain.stochastic;
  j["P"] = matrix_json(chain.P, g.labels());
  j["Ptilde"] = matrix_json(obs.matrix, g.labels());
  j["matches_q_tau"] = true;  // observation_matrix would have thrown otherwise
  if (opt.trials > 0) {
    int start = opt.start.empty() ? 0 : require_vertex(g, opt.start);
    EmpiricalRow row = simulate_observation(chain, rational_to_double(q_r), start, opt.trials,
                                            opt.seed, opt.partitions);
    double worst = 0;
    Json closed = Json::array();
    for (int c = 0; c < g.order(); ++c) {
      double exact = scalar_traits<S>::to_double(obs.matrix(start, c));
      closed.push_back(exact);
      worst = std::max(worst, std::abs(exact - row.probabilities[c]));
    }
    j["empirical"] = Json{{"start", g.labels()[start]},
                          {"trials", row.trials},
                          {"seed", row.seed},
                          {"partitions", row.partitions},
                          {"counts", row.counts},
                          {"probabilities", row.probabilities},
                          {"closed_form_row", std::move(closed)},
                          {"max_abs_error", worst}};
  }
  keep_alive.push_back(std::move(obs.matrix));
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
AccessibilityMatrices<S> make_measure(const WeightedDigraph& g, const Options& opt) {
  if (!opt.alpha.empty())
    return dense_accessibility(g, scalar_traits<S>::from_rational(parse_rational(opt.alpha)));
  return forest_accessibility(g, scalar_traits<S>::from_rational(parse_rational(opt.tau)));
}

template <class S>
Json measure_header(const AccessibilityMatrices<S>& m) {
  Json j;
  j["kind"] = m.kind == MeasureKind::forest ? "forest" : "dense";
  j["parameter"] = scalar_traits<S>::to_string(m.parameter);
  if (m.alpha_upper) j["alpha_upper"] = scalar_traits<S>::to_string(*m.alpha_upper);
  return j;
}

template <class S>
Json cmd_access(const WeightedDigraph& g, const Options& opt, const Matrix<S>** csv_matrix_out,
                std::vector<Matrix<S>>& keep_alive) {
  AccessibilityMatrices<S> m = make_measure<S>(g, opt);
  Json j = measure_header(m);
  j["P1"] = matrix_json(m.p1, g.labels());
  j["P2"] = matrix_json(m.p2, g.labels());
  j["P3"] = matrix_json(m.p3, g.labels());
  keep_alive.push_back(m.p1);
  *csv_matrix_out = &keep_alive.back();
  return j;
}

template <class S>
Json cmd_axioms(const WeightedDigraph& g, const Options& opt) {
  AccessibilityMatrices<S> m = make_measure<S>(g, opt);
  AxiomReport<S> rep = axiom_check(m, g, !opt.nonstrict);
  Json j = measure_header(m);
  j["strict"] = !opt.nonstrict;
  j["conditions"] = axiom_report_json(rep, g.labels());
  if (m.kind == MeasureKind::forest && !opt.skip_monotonicity) {
    AxiomReport<S> mono = monotonicity_check(g, m.parameter, !opt.nonstrict);
    j["monotonicity"] = axiom_report_json(mono, g.labels());
    j["all_passed"] = rep.all_passed() && mono.all_passed();
  } else {
    j["all_passed"] = rep.all_passed();
  }
  return j;
}

template <class S>
Json cmd_delta(const WeightedDigraph& g, const Options& opt, const Matrix<S>** csv_matrix_out,
               std::vector<Matrix<S>>& keep_alive) {
  if (opt.arc.empty()) throw Error("delta needs --arc TAIL,HEAD");
  auto [k, t] = parse_arc(g, opt.arc);
  Rational de = parse_rational(opt.delta_eps);
  S tau = scalar_traits<S>::from_rational(parse_rational(opt.tau));
  DeltaMatrices<S> d = monotonicity_delta(g, tau, k, t, de);
  Json j;
  j["tau"] = opt.tau;
  j["arc"] = Json::array({g.labels()[k], g.labels()[t]});
  j["delta_eps"] = rational_string(de);
  j["closed_equals_recomputed"] = true;  // monotonicity_delta asserts it
  j["delta_P1"] = matrix_json(d.p1_closed, g.labels());
  j["delta_P1_recomputed"] = matrix_json(d.p1_recomputed, g.labels());
  j["delta_P2"] = matrix_json(d.p2_closed, g.labels());
  j["delta_P2_recomputed"] = matrix_json(d.p2_recomputed, g.labels());
  keep_alive.push_back(d.p1_closed);
  *csv_matrix_out = &keep_alive.back();
  return j;
}

Json cmd_oracle_verify(const WeightedDigraph& g, std::ostream& out, const std::string& format) {
  ForestSequence<Rational> seq = forest_sequence<Rational>(g);
  int oracle_v = oracle_out_dimension(g);
  Json checks = Json::array();
  bool all = oracle_v == seq.v;
  for (int k = 0; k < static_cast<int>(seq.Q.size()); ++k) {
    ForestFamily fam = enumerate_out_forests(g, k);
    Matrix<Rational> qk = oracle_Qk(g, k);
    bool q_ok = qk == seq.Q[k];
    bool sigma_ok = fam.total_weight == seq.sigma[k];
    all = all && q_ok && sigma_ok;
    checks.push_back(Json{{"k", k},
                          {"forests", fam.forests.size()},
                          {"sigma_matches", sigma_ok},
                          {"Q_matches", q_ok}});
    if (format == "pretty")
      out << "k=" << k << ": " << (q_ok && sigma_ok ? "PASS" : "FAIL") << " ("
          << fam.forests.size() << " forests, sigma_" << k << " = "
          << rational_string(seq.sigma[k]) << ")\n";
  }
  bool reach_ok = max_forest_reachability_check(g);
  DenseForestReport dense = dense_forest_checks(g);
  all = all && reach_ok;
  if (format == "pretty") {
    out << "out dimension: recurrence " << seq.v << ", enumeration " << oracle_v << " -> "
        << (oracle_v == seq.v ? "PASS" : "FAIL") << "\n";
    out << "max-forest reachability: " << (reach_ok ? "PASS" : "FAIL") << "\n";
    out << "Q_k equivalence: " << (all ? "PASS" : "FAIL") << " for k=0.."
        << static_cast<int>(seq.Q.size()) - 1 << "\n";
  }
  Json j;
  j["out_dimension_recurrence"] = seq.v;
  j["out_dimension_enumeration"] = oracle_v;
  j["per_k"] = std::move(checks);
  j["max_forest_reachability"] = reach_ok;
  j["dense_forest_checks"] = Json{{"vacuous", dense.vacuous},
                                  {"every_vertex_rootable", dense.every_vertex_rootable},
                                  {"every_arc_in_dense_forest", dense.every_arc_in_dense_forest}};
  j["all_pass"] = all;
  return j;
}

// ---- pretty rendering ----

bool looks_like_matrix(const Json& j) {
  return j.is_object() && j.contains("order") && j.contains("labels") && j.contains("entries");
}

void render_matrix(const Json& j, std::ostream& out, int indent) {
  const auto& labels = j["labels"];
  const auto& entries = j["entries"];
  std::size_t width = 1;
  for (const auto& l : labels) width = std::max(width, l.get<std::string>().size());
  for (const auto& row : entries)
    for (const auto& cell : row) width = std::max(width, cell.get<std::string>().size());
  std::string pad(indent, ' ');
  out << pad << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : labels) out << " " << std::setw(static_cast<int>(width)) << l.get<std::string>();
  out << "\n";
  for (std::size_t r = 0; r < entries.size(); ++r) {
    out << pad << std::setw(static_cast<int>(width)) << labels[r].get<std::string>();
    for (const auto& cell : entries[r])
      out << " " << std::setw(static_cast<int>(width)) << cell.get<std::string>();
    out << "\n";
  }
}

void render_pretty(const Json& j, std::ostream& out, int indent) {
  std::string pad(indent, ' ');
  if (looks_like_matrix(j)) {
    render_matrix(j, out, indent);
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !value.empty() && value[0].is_structured())) {
        out << pad << key << ":\n";
        render_pretty(value, out, indent + 2);
      } else {
        out << pad << key << ": " << value.dump() << "\n";
      }
    }
    return;
  }
  if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_structured()) {
        out << pad << "-\n";
        render_pretty(item, out, indent + 2);
      } else {
        out << pad << "- " << item.dump() << "\n";
      }
    }
    return;
  }
  out << pad << j.dump() << "\n";
}

template <class S>
int run_typed(const Options& opt, std::ostream& out) {
  const Matrix<S>* csv_matrix = nullptr;
  std::vector<Matrix<S>> keep_alive;
  Json doc;
  std::vector<std::string> csv_labels;

  if (opt.command == "fixture") {
    WeightedDigraph g = dimension_fixture(opt.fixture_n, opt.fixture_k, opt.fixture_kprime);
    out << "# dimension fixture: n=" << opt.fixture_n << " k=" << opt.fixture_k
        << " k'=" << opt.fixture_kprime << "\n"
        << to_edge_list(g);
    return 0;
  }

  WeightedDigraph g = load_digraph(opt.input_path);
  csv_labels = g.labels();

  if (opt.command == "info") {
    doc = cmd_info<S>(g);
  } else if (opt.command == "forests") {
    doc = cmd_forests<S>(g, &csv_matrix, keep_alive);
  } else if (opt.command == "qtau") {
    doc = cmd_qtau<S>(g, parse_rational(opt.tau), &csv_matrix, keep_alive);
  } else if (opt.command == "limit") {
    doc = cmd_limit<S>(g);
  } else if (opt.command == "ginv") {
    doc = cmd_ginv<S>(g, opt.alpha.empty() ? Rational(1) : parse_rational(opt.alpha), &csv_matrix,
                      keep_alive);
  } else if (opt.command == "pinv") {
    doc = cmd_pinv<S>(g, &csv_matrix, keep_alive);
  } else if (opt.command == "markov") {
    doc = cmd_markov<S>(g, opt, &csv_matrix, keep_alive);
  } else if (opt.command == "access") {
    doc = cmd_access<S>(g, opt, &csv_matrix, keep_alive);
  } else if (opt.command == "axioms") {
    doc = cmd_axioms<S>(g, opt);
  } else if (opt.command == "delta") {
    doc = cmd_delta<S>(g, opt, &csv_matrix, keep_alive);
  } else if (opt.command == "oracle-verify") {
    doc = cmd_oracle_verify(g, out, opt.format);
    if (opt.format == "pretty") return doc["all_pass"].get<bool>() ? 0 : 1;
  } else {
    throw Error("unknown command \"" + opt.command + "\"");
  }

  if (opt.format == "json") {
    out << doc.dump(2) << "\n";
  } else if (opt.format == "csv") {
    if (!csv_matrix) throw Error("no CSV form for command \"" + opt.command + "\"");
    out << matrix_csv(*csv_matrix, csv_labels);
  } else {
    render_pretty(doc, out, 0);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"forestcalc: spanning-forest calculus of weighted digraphs"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--mode", opt.mode, "Scalar field: rational (exact) or float")
      ->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--out", opt.out_path, "Write the report to this path instead of stdout");

  auto with_input = [&opt](CLI::App* sub) {
    sub->add_option("input", opt.input_path, "Edge-list file")->required();
    return sub;
  };

  with_input(app.add_subcommand("info", "Structure report: components, knots, dimensions"));
  with_input(app.add_subcommand("forests", "sigma_k, Q_k, and the maximum-forest matrix"));
  auto* qtau_cmd = with_input(app.add_subcommand("qtau", "Q(tau) by all three routes, plus P1"));
  qtau_cmd->add_option("--tau", opt.tau, "tau > 0, exact rational accepted");
  with_input(app.add_subcommand("limit", "tau (Q(tau) - Jbar) along a schedule vs the group inverse"));
  auto* ginv_cmd = with_input(app.add_subcommand("ginv", "Group inverse of the Kirchhoff matrix"));
  ginv_cmd->add_option("--alpha", opt.alpha, "nonzero shift, default 1");
  with_input(app.add_subcommand("pinv", "Moore-Penrose inverse of the Kirchhoff matrix"));
  auto* markov_cmd = with_input(app.add_subcommand("markov", "Related chain and observation model"));
  markov_cmd->add_option("--alpha", opt.alpha, "nonzero alpha for P = I - alpha L");
  markov_cmd->add_option("--q", opt.q, "success probability in (0,1)");
  markov_cmd->add_option("--start", opt.start, "start vertex for simulation");
  markov_cmd->add_option("--trials", opt.trials, "Monte-Carlo trials (0 = closed form only)");
  markov_cmd->add_option("--seed", opt.seed, "simulation seed");
  markov_cmd->add_option("--partitions", opt.partitions, "deterministic trial partitions");
  auto* access_cmd = with_input(app.add_subcommand("access", "Accessibility measures P1, P2, P3"));
  access_cmd->add_option("--tau", opt.tau, "forest measure parameter");
  access_cmd->add_option("--alpha", opt.alpha, "dense measure parameter (picks the dense kind)");
  auto* axioms_cmd = with_input(app.add_subcommand("axioms", "Axiom battery for a measure"));
  axioms_cmd->add_option("--tau", opt.tau, "forest measure parameter");
  axioms_cmd->add_option("--alpha", opt.alpha, "dense measure parameter (picks the dense kind)");
  axioms_cmd->add_flag("--nonstrict", opt.nonstrict, "evaluate the nonstrict forms");
  axioms_cmd->add_flag("--skip-monotonicity", opt.skip_monotonicity, "static conditions only");
  auto* delta_cmd = with_input(app.add_subcommand("delta", "Closed-form increments vs recomputation"));
  delta_cmd->add_option("--tau", opt.tau, "measure parameter");
  delta_cmd->add_option("--arc", opt.arc, "arc TAIL,HEAD whose weight grows")->required();
  delta_cmd->add_option("--delta-eps", opt.delta_eps, "weight increment, default 1");
  auto* fixture_cmd = app.add_subcommand("fixture", "Emit a digraph with chosen forest dimensions");
  fixture_cmd->add_option("--n", opt.fixture_n, "vertex count")->required();
  fixture_cmd->add_option("--k", opt.fixture_k, "out dimension")->required();
  fixture_cmd->add_option("--kprime", opt.fixture_kprime, "in dimension")->required();
  with_input(app.add_subcommand("oracle-verify", "Recurrence vs enumeration on a small digraph"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  opt.command = app.get_subcommands().front()->get_name();

  if (opt.mode.empty()) {
    const char* env = std::getenv("FORESTCALC_MODE");
    opt.mode = env != nullptr && std::string(env) == "float" ? "float" : "rational";
  }

  std::ostringstream capture;
  int code = 0;
  try {
    code = opt.mode == "float" ? run_typed<double>(opt, capture) : run_typed<Rational>(opt, capture);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }

  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    if (!f) {
      err << "error: cannot write \"" << opt.out_path << "\"\n";
      return 1;
    }
    f << capture.str();
  } else {
    out << capture.str();
  }
  return code;
}

}  // namespace forestcalc
