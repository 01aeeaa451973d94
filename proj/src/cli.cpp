#include "summet/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "summet/io.hpp"
#include "summet/path_metrics.hpp"
#include "summet/proximity.hpp"
#include "summet/summing.hpp"

namespace summet {

namespace {

using io::json;

struct CommonOpts {
  std::string output;
  std::string format = "json";
  double tol_feas = 1e-9;
  double tol_metric = 1e-7;

  ToleranceConfig tolerances() const {
    ToleranceConfig t;
    t.feas_tol = tol_feas;
    t.metric_tol = tol_metric;
    return t;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--output", opts.output, "write the report to a file instead of stdout");
  cmd->add_option("--format", opts.format, "output format: json or csv (matrices only)")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol-feas", opts.tol_feas, "feasibility tolerance");
  cmd->add_option("--tol-metric", opts.tol_metric, "metric axiom tolerance");
}

void emit(const CommonOpts& opts, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (opts.output.empty()) {
    writer(out);
    return;
  }
  std::ofstream f(opts.output);
  if (!f) throw InputError(opts.output + ": cannot open for writing");
  writer(f);
}

void emit_json(const CommonOpts& opts, std::ostream& out, const json& j) {
  emit(opts, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void emit_matrix(const CommonOpts& opts, std::ostream& out, const std::vector<std::string>& ids,
                 const Matrix& m) {
  if (opts.format == "csv") {
    emit(opts, out, [&](std::ostream& os) { io::write_matrix_csv(os, ids, m); });
    return;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  emit_json(opts, out, json{{"ids", ids}, {"matrix", std::move(rows)}});
}

json path_to_json(const PathResult& pr, const std::vector<std::string>& ids) {
  json verts = json::array();
  for (std::size_t v : pr.vertices) verts.push_back(ids[v]);
  return json{{"value", pr.value}, {"vertices", std::move(verts)}};
}

json validation_to_json(const ValidationReport& report, const FiniteMetricSpace& s) {
  json issues = json::array();
  for (const auto& issue : report.issues) {
    json points = json::array({s.ids[issue.i], s.ids[issue.j]});
    if (issue.kind == ValidationIssue::Kind::TriangleViolation) points.push_back(s.ids[issue.k]);
    issues.push_back(json{{"message", issue.describe(s)}, {"points", std::move(points)}});
  }
  return json{{"valid", report.valid()}, {"issues", std::move(issues)}};
}

std::pair<std::size_t, std::size_t> parse_pair_arg(const std::string& arg,
                                                   const std::vector<std::string>& ids) {
  const auto comma = arg.find(',');
  if (comma == std::string::npos) throw InputError("--path expects 'from,to'");
  const auto list = io::parse_id_list(arg, ids);
  if (list.size() != 2) throw InputError("--path expects exactly two ids");
  return {list[0], list[1]};
}

FiniteMetricSpace metric_or_q1(const std::string& metric_file, const WeightedGraph& g) {
  if (metric_file.empty()) {
    return as_metric_space(g, q_p(g, 1.0).values);
  }
  FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(metric_file));
  if (s.ids != g.ids) {
    throw InputError("metric file: point ids must match the graph's vertex ids");
  }
  return s;
}

int run_parsed(CLI::App& app, std::ostream& out, std::ostream& err,
               const std::vector<std::string>& argv);

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"eccentric summability toolkit", "summet"};
  app.require_subcommand(1);
  try {
    return run_parsed(app, out, err, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateSequence& e) {
    err << "degenerate input: " << e.what() << '\n';
    return 1;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

namespace {

int run_parsed(CLI::App& app, std::ostream& out, std::ostream& err,
               const std::vector<std::string>& argv) {
  (void)err;
  int exit_code = 0;

  // --- validate ---------------------------------------------------------
  auto* validate_cmd = app.add_subcommand("validate", "check metric axioms");
  auto validate_opts = std::make_shared<CommonOpts>();
  auto validate_space = std::make_shared<std::string>();
  validate_cmd->add_option("--space", *validate_space, "metric space JSON")->required();
  add_common(validate_cmd, *validate_opts);
  validate_cmd->callback([&, validate_opts, validate_space] {
    const FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(*validate_space));
    const ValidationReport report = validate_metric(s, validate_opts->tol_metric);
    emit_json(*validate_opts, out, validation_to_json(report, s));
    if (!report.valid()) exit_code = 1;
  });

  // --- ecc-pseudo -------------------------------------------------------
  auto* ecc_cmd = app.add_subcommand("ecc-pseudo", "eccentric pseudometric matrix");
  auto ecc_opts = std::make_shared<CommonOpts>();
  auto ecc_space = std::make_shared<std::string>();
  auto ecc_subset = std::make_shared<std::string>();
  ecc_cmd->add_option("--space", *ecc_space, "metric space JSON")->required();
  ecc_cmd->add_option("--subset", *ecc_subset, "comma-separated point ids (default: all)");
  ecc_opts->format = "csv";
  add_common(ecc_cmd, *ecc_opts);
  ecc_cmd->callback([&, ecc_opts, ecc_space, ecc_subset] {
    const FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(*ecc_space));
    const auto subset = io::parse_id_list(*ecc_subset, s.ids);
    emit_matrix(*ecc_opts, out, s.ids, eccentric_pseudometric(s, subset));
  });

  // --- seqdist ----------------------------------------------------------
  auto* seq_cmd = app.add_subcommand("seqdist", "sequence proximity functionals");
  auto seq_opts = std::make_shared<CommonOpts>();
  auto seq_space = std::make_shared<std::string>();
  auto seq_file = std::make_shared<std::string>();
  auto seq_subset = std::make_shared<std::string>();
  auto seq_p = std::make_shared<double>(1.0);
  auto seq_mode = std::make_shared<std::string>("auto");
  auto seq_seed = std::make_shared<std::uint64_t>(20240);
  auto seq_starts = std::make_shared<int>(32);
  seq_cmd->add_option("--space", *seq_space, "metric space JSON")->required();
  seq_cmd->add_option("--seq", *seq_file, "pair sequence JSON")->required();
  seq_cmd->add_option("--p", *seq_p, "exponent p >= 1");
  seq_cmd->add_option("--subset", *seq_subset, "subset for the eccentric functional");
  seq_cmd->add_option("--wc-mode", *seq_mode, "weak proximity mode")
      ->check(CLI::IsMember({"auto", "exact", "bracket"}));
  seq_cmd->add_option("--seed", *seq_seed, "seed for the bracket multi-start");
  seq_cmd->add_option("--starts", *seq_starts, "multi-start count for the bracket mode");
  add_common(seq_cmd, *seq_opts);
  seq_cmd->callback([&, seq_opts, seq_space, seq_file, seq_subset, seq_p, seq_mode, seq_seed,
                     seq_starts] {
    const FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(*seq_space));
    const PairSequence seq = io::parse_sequence(io::load_json_file(*seq_file), s);
    const ToleranceConfig tol = seq_opts->tolerances();

    WcOptions wc;
    wc.seed = *seq_seed;
    wc.starts = *seq_starts;
    if (*seq_mode == "exact") {
      wc.mode = WcMode::Exact;
    } else if (*seq_mode == "bracket") {
      wc.mode = WcMode::Bracket;
    } else {
      wc.mode = (*seq_p == 1.0 && seq.size() <= wc.exact_limit) ? WcMode::Exact : WcMode::Bracket;
    }

    json report;
    report["p"] = *seq_p;
    report["d_ac"] = d_ac(s, seq, *seq_p);
    const DccResult cc_all = d_cc(s, seq, *seq_p, s.all_indices());
    report["d_cc"] = json{{"value", cc_all.value}, {"witness", s.ids[cc_all.witness]}};
    if (!seq_subset->empty()) {
      const DccResult cc_sub = d_cc(s, seq, *seq_p, io::parse_id_list(*seq_subset, s.ids));
      report["d_cc_subset"] = json{{"value", cc_sub.value}, {"witness", s.ids[cc_sub.witness]}};
    }
    const WcResult wr = d_wc(s, seq, *seq_p, wc, tol);
    if (wr.exact()) {
      report["d_wc"] = json{{"method", "exact"}, {"value", wr.value()}};
    } else {
      report["d_wc"] = json{{"method", "bracket"}, {"lower", wr.lower}, {"upper", wr.upper}};
    }
    emit_json(*seq_opts, out, report);
  });

  // --- ae-norm ----------------------------------------------------------
  auto* ae_cmd = app.add_subcommand("ae-norm", "molecule norm with optimal witness");
  auto ae_opts = std::make_shared<CommonOpts>();
  auto ae_space = std::make_shared<std::string>();
  auto ae_mol = std::make_shared<std::string>();
  ae_cmd->add_option("--space", *ae_space, "metric space JSON")->required();
  ae_cmd->add_option("--molecule", *ae_mol, "molecule JSON")->required();
  add_common(ae_cmd, *ae_opts);
  ae_cmd->callback([&, ae_opts, ae_space, ae_mol] {
    const FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(*ae_space));
    const Molecule m = io::parse_molecule(io::load_json_file(*ae_mol), s);
    const AeNormResult r = ae_norm(s, m, ae_opts->tolerances());
    json witness = json::object();
    for (std::size_t i = 0; i < s.size(); ++i) witness[s.ids[i]] = r.witness.values[i];
    emit_json(*ae_opts, out, json{{"value", r.value}, {"witness", {{"values", witness}}}});
  });

  // --- pietsch ----------------------------------------------------------
  auto* pie_cmd = app.add_subcommand("pietsch", "minimal summing constant with measure");
  auto pie_opts = std::make_shared<CommonOpts>();
  auto pie_space = std::make_shared<std::string>();
  auto pie_f = std::make_shared<std::string>();
  auto pie_domain = std::make_shared<std::string>();
  auto pie_codomain = std::make_shared<std::string>();
  auto pie_map = std::make_shared<std::string>();
  auto pie_k = std::make_shared<std::string>();
  auto pie_p = std::make_shared<double>(1.0);
  auto pie_require_finite = std::make_shared<bool>(false);
  pie_cmd->add_option("--space", *pie_space, "metric space JSON (functional mode)");
  pie_cmd->add_option("--f", *pie_f, "functional values JSON (functional mode)");
  pie_cmd->add_option("--domain", *pie_domain, "domain space JSON (map mode)");
  pie_cmd->add_option("--codomain", *pie_codomain, "codomain space JSON (map mode)");
  pie_cmd->add_option("--map", *pie_map, "vertex map JSON (map mode)");
  pie_cmd->add_option("--k", *pie_k, "compact subset ids (default: all)");
  pie_cmd->add_option("--p", *pie_p, "exponent p >= 1");
  pie_cmd->add_flag("--require-finite", *pie_require_finite,
                    "exit 1 when the constant is infinite");
  add_common(pie_cmd, *pie_opts);
  pie_cmd->callback([&, pie_opts, pie_space, pie_f, pie_domain, pie_codomain, pie_map, pie_k,
                     pie_p, pie_require_finite] {
    const ToleranceConfig tol = pie_opts->tolerances();
    PietschCertificate cert;
    std::vector<std::string> ids;
    const bool functional_mode = !pie_space->empty();
    if (functional_mode == !pie_map->empty()) {
      throw InputError("pietsch: give either --space/--f or --domain/--codomain/--map");
    }
    if (functional_mode) {
      if (pie_f->empty()) throw InputError("pietsch: functional mode needs --f");
      const FiniteMetricSpace s = io::parse_metric_space(io::load_json_file(*pie_space));
      const LipschitzFunctional f = io::parse_values(io::load_json_file(*pie_f), s.ids);
      cert = pietsch_functional(s, f, io::parse_id_list(*pie_k, s.ids), *pie_p, tol);
      ids = s.ids;
    } else {
      if (pie_domain->empty() || pie_codomain->empty()) {
        throw InputError("pietsch: map mode needs --domain and --codomain");
      }
      MetricMap t;
      t.domain = io::parse_metric_space(io::load_json_file(*pie_domain));
      t.codomain = io::parse_metric_space(io::load_json_file(*pie_codomain));
      t.vertex_map = io::parse_vertex_map(io::load_json_file(*pie_map), t.domain, t.codomain);
      cert = pietsch_map(t, io::parse_id_list(*pie_k, t.domain.ids), *pie_p, tol);
      ids = t.domain.ids;
    }
    emit_json(*pie_opts, out, io::certificate_to_json(cert, ids));
    if (cert.infinite && *pie_require_finite) exit_code = 1;
  });

  // --- approx -----------------------------------------------------------
  auto* ap_cmd = app.add_subcommand("approx", "eccentrically approximating constant");
  auto ap_opts = std::make_shared<CommonOpts>();
  auto ap_domain = std::make_shared<std::string>();
  auto ap_codomain = std::make_shared<std::string>();
  auto ap_map = std::make_shared<std::string>();
  auto ap_k1 = std::make_shared<std::string>();
  auto ap_k2 = std::make_shared<std::string>();
  auto ap_mix = std::make_shared<std::string>();
  auto ap_p = std::make_shared<double>(1.0);
  auto ap_require_finite = std::make_shared<bool>(false);
  ap_cmd->add_option("--domain", *ap_domain, "domain space JSON")->required();
  ap_cmd->add_option("--codomain", *ap_codomain, "codomain space JSON")->required();
  ap_cmd->add_option("--map", *ap_map, "vertex map JSON")->required();
  ap_cmd->add_option("--k1", *ap_k1, "domain subset ids (default: all)");
  ap_cmd->add_option("--k2", *ap_k2, "codomain subset ids (default: all)");
  ap_cmd->add_option("--mix", *ap_mix, "mixing measure over k2 for the averaged domination");
  ap_cmd->add_option("--p", *ap_p, "exponent p >= 1");
  ap_cmd->add_flag("--require-finite", *ap_require_finite,
                   "exit 1 when the constant is infinite");
  add_common(ap_cmd, *ap_opts);
  ap_cmd->callback([&, ap_opts, ap_domain, ap_codomain, ap_map, ap_k1, ap_k2, ap_mix, ap_p,
                    ap_require_finite] {
    const ToleranceConfig tol = ap_opts->tolerances();
    MetricMap t;
    t.domain = io::parse_metric_space(io::load_json_file(*ap_domain));
    t.codomain = io::parse_metric_space(io::load_json_file(*ap_codomain));
    t.vertex_map = io::parse_vertex_map(io::load_json_file(*ap_map), t.domain, t.codomain);
    const auto k1 = io::parse_id_list(*ap_k1, t.domain.ids);
    const auto k2 = io::parse_id_list(*ap_k2, t.codomain.ids);
    const ApproxResult result = approximating_constant(t, k1, k2, *ap_p, tol);

    json report;
    json per_z = json::array();
    for (const auto& [z, cert] : result.per_z) {
      per_z.push_back(json{{"z", t.codomain.ids[z]},
                           {"certificate", io::certificate_to_json(cert, t.domain.ids)}});
    }
    report["per_z"] = std::move(per_z);
    if (result.infinite) {
      report["constant"] = "inf";
      const auto& [z, pair] = *result.witness;
      report["witness"] = json{{"z", t.codomain.ids[z]},
                               {"pair", json::array({t.domain.ids[pair.first],
                                                     t.domain.ids[pair.second]})}};
    } else {
      report["constant"] = result.constant;
      if (!ap_mix->empty()) {
        const ProbabilityMeasure nu =
            io::parse_measure(io::load_json_file(*ap_mix), t.codomain.ids);
        const MixedDominationReport mixed = verify_mixed_domination(t, result, nu, *ap_p, tol);
        report["mixed"] = json{
            {"constant", mixed.constant},
            {"domain_measure", io::measure_to_json(mixed.domain_measure, t.domain.ids)},
            {"passed", mixed.passed},
            {"worst_violation", mixed.worst_violation}};
      }
    }
    emit_json(*ap_opts, out, report);
    if (result.infinite && *ap_require_finite) exit_code = 1;
  });

  // --- graph ------------------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "path metrics on weighted graphs");
  graph_cmd->require_subcommand(1);
  struct GraphArgs {
    CommonOpts opts;
    std::string graph_file;
    std::string metric_file;
    std::string measure_file;
    std::string index_file;
    double p = 1.0;
    bool serial = false;
    std::vector<std::string> path_queries;
  };
  auto add_graph_sub = [&](const char* name, const char* desc, bool needs_metric,
                           bool needs_measure, bool needs_index) {
    auto* sub = graph_cmd->add_subcommand(name, desc);
    auto args = std::make_shared<GraphArgs>();
    args->opts.format = "csv";
    sub->add_option("--graph", args->graph_file, "graph JSON")->required();
    if (needs_metric) {
      sub->add_option("--metric", args->metric_file,
                      "metric space over the vertices (default: shortest-path metric)");
    }
    if (needs_measure) {
      sub->add_option("--measure", args->measure_file, "probability measure JSON")->required();
    }
    if (needs_index) {
      sub->add_option("--index", args->index_file, "index values JSON")->required();
    }
    sub->add_option("--p", args->p, "exponent p in [1, 64]");
    sub->add_flag("--serial", args->serial, "run the serial reference kernel");
    sub->add_option("--path", args->path_queries, "path query 'from,to' (repeatable)");
    add_common(sub, args->opts);
    return std::make_pair(sub, args);
  };

  auto [qp_sub, qp_args] = add_graph_sub("qp", "weighted shortest-path p-metric", false, false,
                                         false);
  auto [dp_sub, dp_args] = add_graph_sub("dp", "p-path pseudometric of a metric", true, false,
                                         false);
  auto [dpmu_sub, dpmu_args] =
      add_graph_sub("dpmu", "integral-average path pseudometric", true, true, false);
  auto [ep_sub, ep_args] = add_graph_sub("ep", "best-path estimate of an index", false, false,
                                         true);

  auto run_graph = [&](const GraphArgs& args, const std::function<PathMatrixResult(
                                                  const WeightedGraph&, ExecPolicy)>& compute) {
    const WeightedGraph g = io::parse_graph(io::load_json_file(args.graph_file));
    const ExecPolicy policy = args.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    const PathMatrixResult result = compute(g, policy);
    if (!args.path_queries.empty()) {
      json paths = json::array();
      for (const auto& q : args.path_queries) {
        const auto [from, to] = parse_pair_arg(q, g.ids);
        json pj = path_to_json(result.path(from, to), g.ids);
        pj["from"] = g.ids[from];
        pj["to"] = g.ids[to];
        paths.push_back(std::move(pj));
      }
      emit_json(args.opts, out, json{{"paths", std::move(paths)}});
      return;
    }
    emit_matrix(args.opts, out, g.ids, result.values);
  };

  qp_sub->callback([&, qp_args] {
    run_graph(*qp_args,
              [&](const WeightedGraph& g, ExecPolicy pol) { return q_p(g, qp_args->p, pol); });
  });
  dp_sub->callback([&, dp_args] {
    run_graph(*dp_args, [&](const WeightedGraph& g, ExecPolicy pol) {
      return d_p(g, metric_or_q1(dp_args->metric_file, g), dp_args->p, pol);
    });
  });
  dpmu_sub->callback([&, dpmu_args] {
    run_graph(*dpmu_args, [&](const WeightedGraph& g, ExecPolicy pol) {
      const FiniteMetricSpace d = metric_or_q1(dpmu_args->metric_file, g);
      const ProbabilityMeasure mu =
          io::parse_measure(io::load_json_file(dpmu_args->measure_file), g.ids);
      return d_p_mu(g, d, dpmu_args->p, mu, pol);
    });
  });
  ep_sub->callback([&, ep_args] {
    run_graph(*ep_args, [&](const WeightedGraph& g, ExecPolicy pol) {
      const IndexFunction f = io::parse_values(io::load_json_file(ep_args->index_file), g.ids);
      return e_p(g, f, ep_args->p, pol);
    });
  });

  // --- symmetry ---------------------------------------------------------
  auto* sym_cmd = app.add_subcommand("symmetry", "vertex classes at d_{p,mu} ~ 0");
  auto sym_opts = std::make_shared<CommonOpts>();
  auto sym_graph = std::make_shared<std::string>();
  auto sym_metric = std::make_shared<std::string>();
  auto sym_measure = std::make_shared<std::string>();
  auto sym_p = std::make_shared<double>(1.0);
  auto sym_tol = std::make_shared<double>(1e-8);
  sym_cmd->add_option("--graph", *sym_graph, "graph JSON")->required();
  sym_cmd->add_option("--metric", *sym_metric,
                      "metric over the vertices (default: shortest-path metric)");
  sym_cmd->add_option("--measure", *sym_measure, "probability measure JSON")->required();
  sym_cmd->add_option("--p", *sym_p, "exponent p in [1, 64]");
  sym_cmd->add_option("--tol", *sym_tol, "grouping tolerance");
  add_common(sym_cmd, *sym_opts);
  sym_cmd->callback([&, sym_opts, sym_graph, sym_metric, sym_measure, sym_p, sym_tol] {
    const WeightedGraph g = io::parse_graph(io::load_json_file(*sym_graph));
    const FiniteMetricSpace d = metric_or_q1(*sym_metric, g);
    const ProbabilityMeasure mu = io::parse_measure(io::load_json_file(*sym_measure), g.ids);
    const SymmetryClasses classes = symmetry_classes(g, d, *sym_p, mu, *sym_tol);
    json cls = json::array();
    for (const auto& c : classes.classes) {
      json ids = json::array();
      for (std::size_t v : c) ids.push_back(g.ids[v]);
      cls.push_back(std::move(ids));
    }
    emit_json(*sym_opts, out,
              json{{"classes", std::move(cls)},
                   {"transitive", classes.transitive},
                   {"tol", classes.tol}});
  });

  // --- check-t2 ---------------------------------------------------------
  auto* t2_cmd = app.add_subcommand("check-t2", "best-path estimate dominations");
  auto t2_opts = std::make_shared<CommonOpts>();
  auto t2_graph = std::make_shared<std::string>();
  auto t2_metric = std::make_shared<std::string>();
  auto t2_index = std::make_shared<std::string>();
  auto t2_k = std::make_shared<std::string>();
  auto t2_p = std::make_shared<double>(1.0);
  t2_cmd->add_option("--graph", *t2_graph, "graph JSON")->required();
  t2_cmd->add_option("--metric", *t2_metric,
                     "metric over the vertices (default: shortest-path metric)");
  t2_cmd->add_option("--index", *t2_index, "index values JSON")->required();
  t2_cmd->add_option("--k", *t2_k, "subset for the certificate (default: all)");
  t2_cmd->add_option("--p", *t2_p, "exponent p in [1, 64]");
  add_common(t2_cmd, *t2_opts);
  t2_cmd->callback([&, t2_opts, t2_graph, t2_metric, t2_index, t2_k, t2_p] {
    const ToleranceConfig tol = t2_opts->tolerances();
    const WeightedGraph g = io::parse_graph(io::load_json_file(*t2_graph));
    const FiniteMetricSpace d = metric_or_q1(*t2_metric, g);
    const IndexFunction f = io::parse_values(io::load_json_file(*t2_index), g.ids);
    const PietschCertificate cert =
        pietsch_functional(d, f, io::parse_id_list(*t2_k, d.ids), *t2_p, tol);
    const T2Report report = check_t2(g, d, *t2_p, f, cert, tol);

    json rj;
    rj["lip"] = report.lip.infinite ? json("inf") : json(report.lip.value);
    rj["certificate"] = io::certificate_to_json(cert, g.ids);
    rj["part1"] = json{{"ok", report.part1_ok},
                       {"worst_gap", report.part1_worst_gap},
                       {"worst_ratio", report.part1_worst_ratio},
                       {"worst_pair", json::array({g.ids[report.part1_worst_pair.first],
                                                   g.ids[report.part1_worst_pair.second]})}};
    if (report.part2_checked) {
      rj["part2"] = json{{"ok", report.part2_ok},
                         {"worst_gap", report.part2_worst_gap},
                         {"worst_ratio", report.part2_worst_ratio},
                         {"worst_pair", json::array({g.ids[report.part2_worst_pair.first],
                                                     g.ids[report.part2_worst_pair.second]})}};
    } else {
      rj["part2"] = nullptr;
    }
    emit_json(*t2_opts, out, rj);
    if (!report.part1_ok || (report.part2_checked && !report.part2_ok)) exit_code = 1;
  });

  // --- gen ----------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "emit fixture graphs");
  gen_cmd->require_subcommand(1);
  auto add_gen_sub = [&](const char* name, const char* desc,
                         WeightedGraph (*generator)(std::size_t)) {
    auto* sub = gen_cmd->add_subcommand(name, desc);
    auto n = std::make_shared<std::size_t>(8);
    auto opts = std::make_shared<CommonOpts>();
    sub->add_option("--n", *n, "size parameter (>= 2)")->required();
    add_common(sub, *opts);
    sub->callback([&, n, opts, generator] {
      emit_json(*opts, out, io::graph_to_json(generator(*n)));
    });
  };
  add_gen_sub("sequence", "convergent-sequence graph", sequence_graph);
  add_gen_sub("two-apex", "sequence graph with two symmetric apexes", two_apex_graph);
  add_gen_sub("circle", "discretized circle with center", circle_graph);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  app.parse(std::move(reversed));
  return exit_code;
}

}  // namespace

}  // namespace summet
