#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isetlab/analytic.hpp"
#include "isetlab/collider.hpp"
#include "isetlab/geometry.hpp"
#include "isetlab/graph.hpp"
#include "isetlab/harness.hpp"
#include "isetlab/iset.hpp"
#include "isetlab/metropolis.hpp"

namespace py = pybind11;
using namespace isetlab;

namespace {

VertexSet to_set(uint32_t n, const std::vector<uint32_t>& verts) {
  VertexSet s(n);
  for (uint32_t v : verts) s.set(v);
  return s;
}

py::object big_int(u128 x) {
  return py::module_::import("builtins").attr("int")(u128_to_string(x));
}

py::dict report_dict(const ClusterReport& r) {
  py::dict d;
  d["k"] = r.k;
  d["gamma"] = r.gamma;
  d["total"] = r.total;
  d["max_class_fraction"] = r.max_class_fraction;
  d["min_interclass_distance"] =
      r.min_interclass_distance ? py::object(py::int_(*r.min_interclass_distance)) : py::none();
  py::list classes;
  for (const auto& [size, rep] : r.classes) {
    py::dict c;
    c["size"] = size;
    c["representative"] = rep.vertices();
    classes.append(c);
  }
  d["classes"] = classes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "independent sets in sparse random graphs: generators, layers, "
            "moment formulas, geometry, collider paths, metropolis dynamics";
  m.attr("__version__") = "0.1.0";

  py::class_<Graph>(m, "Graph")
      .def(py::init<uint32_t>(), py::arg("n"))
      .def(py::init([](uint32_t n, const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
             Graph g(n);
             for (auto [u, v] : edges) g.add_edge(u, v);
             return g;
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::num_vertices)
      .def_property_readonly("m", &Graph::num_edges)
      .def("has_edge", &Graph::has_edge)
      .def("degree", &Graph::degree)
      .def("avg_degree", &Graph::avg_degree)
      .def("neighbors", [](const Graph& g, uint32_t v) { return g.neighbors(v).vertices(); })
      .def("edges", &Graph::edges)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<LogValue>(m, "LogValue")
      .def_readonly("sign", &LogValue::sign)
      .def_readonly("log_mag", &LogValue::log_mag)
      .def("to_double", &LogValue::to_double)
      .def("__float__", &LogValue::to_double)
      .def("__repr__", [](const LogValue& v) {
        return "LogValue(sign=" + std::to_string(v.sign) +
               ", log_mag=" + std::to_string(v.log_mag) + ")";
      });

  // generators
  m.def("gen_gnm", &gen_gnm, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("gen_gnm_star", &gen_gnm_star, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def("gen_gnp", &gen_gnp, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def(
      "gen_planted",
      [](uint32_t n, uint64_t m, uint32_t k, uint64_t seed) {
        auto pair = gen_planted(n, m, k, seed);
        return py::make_tuple(pair.graph, pair.sigma.vertices());
      },
      py::arg("n"), py::arg("m"), py::arg("k"), py::arg("seed"));
  m.def("load_graph", &load_graph, py::arg("path"));
  m.def("save_graph", &save_graph, py::arg("graph"), py::arg("path"));

  // independent-set primitives
  m.def("is_independent", [](const Graph& g, const std::vector<uint32_t>& s) {
    return is_independent(g, to_set(g.num_vertices(), s));
  });
  m.def("greedy_mis", [](const Graph& g, uint64_t seed) { return greedy_mis(g, seed).vertices(); },
        py::arg("graph"), py::arg("seed"));
  m.def(
      "max_is_exact",
      [](const Graph& g, uint64_t budget) {
        MaxIsResult r = max_is_exact(g, budget);
        return py::make_tuple(r.set.vertices(), r.exact);
      },
      py::arg("graph"), py::arg("node_budget") = uint64_t(50'000'000));
  m.def(
      "enumerate_layer",
      [](const Graph& g, uint32_t k, uint64_t cap) {
        Layer layer = enumerate_layer(g, k, cap);
        py::list members;
        for (const auto& s : layer.members) members.append(s.vertices());
        return py::make_tuple(members, layer.truncated);
      },
      py::arg("graph"), py::arg("k"), py::arg("cap") = uint64_t(10'000'000));
  m.def("count_layer",
        [](const Graph& g, uint32_t k) { return big_int(count_layer(g, k)); },
        py::arg("graph"), py::arg("k"));
  m.def(
      "sample_uk",
      [](const Graph& g, uint32_t k, uint64_t seed, uint64_t cap) -> py::object {
        auto s = sample_uk(g, k, seed, cap);
        if (!s) return py::none();
        return py::cast(s->vertices());
      },
      py::arg("graph"), py::arg("k"), py::arg("seed"), py::arg("cap") = uint64_t(10'000'000));

  // analytic
  m.def("expected_count_star", &expected_count_star, py::arg("n"), py::arg("m"), py::arg("k"));
  m.def("expected_count_gnm", &expected_count_gnm, py::arg("n"), py::arg("m"), py::arg("k"));
  m.def("k_epsilon", &k_epsilon, py::arg("n"), py::arg("m"), py::arg("eps"));
  m.def("delta_k", [](uint64_t n, uint64_t k) {
    auto d = delta_k(n, k);
    return py::make_tuple(d.value, d.leading_order_only);
  });
  m.def("second_moment_terms", [](uint64_t n, uint64_t m, uint64_t k) {
    auto sm = second_moment_terms(n, m, k);
    return py::make_tuple(sm.a, sm.ratio);
  });
  m.def("sm_term_ratio", &sm_term_ratio, py::arg("n"), py::arg("m"), py::arg("k"), py::arg("i"));
  m.def("sm_ratio_crossings", [](uint64_t n, uint64_t m, uint64_t k) {
    auto cr = sm_ratio_crossings(n, m, k);
    return py::make_tuple(cr.i1 ? py::object(py::int_(*cr.i1)) : py::none(),
                          cr.i2 ? py::object(py::int_(*cr.i2)) : py::none());
  });
  m.def("expandable_expected",
        [](uint64_t n, uint64_t m, uint64_t k, double gamma, double delta) {
          auto r = expandable_expected(n, m, k, gamma, delta);
          py::dict d;
          d["value"] = r.value;
          d["kept"] = r.kept;
          d["added"] = r.added;
          d["rounded"] = r.rounded;
          return d;
        });
  m.def("cluster_expected", [](uint64_t n, uint64_t m, uint64_t k, double x, double lam) {
    auto r = cluster_expected(n, m, k, x, lam);
    py::dict d;
    d["value"] = r.value;
    d["overlap"] = r.overlap;
    d["rounded"] = r.rounded;
    d["y_lambda_surrogate"] = r.y_lambda_surrogate;
    return d;
  });
  m.def("f_d_profile", [](uint64_t n, uint64_t m, const std::vector<double>& grid) {
    py::list out;
    for (const auto& pt : f_d_profile(n, m, grid)) out.append(py::make_tuple(pt.s, pt.f));
    return out;
  });

  // geometry
  m.def("hamming", [](uint32_t n, const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    return hamming(to_set(n, a), to_set(n, b));
  });
  m.def("overlap", [](uint32_t n, const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    return overlap(to_set(n, a), to_set(n, b));
  });
  m.def(
      "gamma_components",
      [](const Graph& g, uint32_t k, uint32_t gamma, uint64_t cap) {
        return report_dict(gamma_components(enumerate_layer(g, k, cap), gamma));
      },
      py::arg("graph"), py::arg("k"), py::arg("gamma"), py::arg("cap") = uint64_t(10'000'000));
  m.def("near_layer_count",
        [](const Graph& g, const std::vector<uint32_t>& sigma, double x, uint64_t lam_edges) {
          return near_layer_count(g, to_set(g.num_vertices(), sigma), x, lam_edges);
        },
        py::arg("graph"), py::arg("sigma"), py::arg("x"), py::arg("lam_edges"));
  m.def(
      "is_expandable",
      [](const Graph& g, const std::vector<uint32_t>& sigma, double gamma, double delta,
         uint64_t budget) {
        ExpandResult r = is_expandable(g, to_set(g.num_vertices(), sigma), gamma, delta, budget);
        py::dict d;
        d["status"] = r.status == ExpandStatus::witness       ? "witness"
                      : r.status == ExpandStatus::proven_none ? "proven_none"
                                                              : "budget_exceeded";
        if (r.witness) {
          d["tau"] = r.witness->tau.vertices();
          d["gamma_achieved"] = r.witness->gamma_achieved;
          d["delta_achieved"] = r.witness->delta_achieved;
        }
        return d;
      },
      py::arg("graph"), py::arg("sigma"), py::arg("gamma"), py::arg("delta"),
      py::arg("budget") = uint64_t(10'000'000));
  m.def("pure_vertices", [](const Graph& g, const std::vector<uint32_t>& sigma) {
    return pure_vertices(g, to_set(g.num_vertices(), sigma)).vertices();
  });
  m.def("pure_subgraph", [](const Graph& g, const std::vector<uint32_t>& sigma) {
    InducedSubgraph sub = pure_subgraph(g, to_set(g.num_vertices(), sigma));
    return py::make_tuple(sub.graph, sub.to_original);
  });
  m.def(
      "expand_via_pure",
      [](const Graph& g, const std::vector<uint32_t>& sigma, const std::string& strategy,
         uint64_t seed) {
        return expand_via_pure(g, to_set(g.num_vertices(), sigma),
                               strategy == "exact" ? ExpandStrategy::exact : ExpandStrategy::greedy,
                               seed)
            .vertices();
      },
      py::arg("graph"), py::arg("sigma"), py::arg("strategy") = "greedy", py::arg("seed") = 0);
  m.def(
      "blocking_vertices",
      [](const Graph& g, const std::vector<uint32_t>& sigma, double threshold) {
        return blocking_vertices(g, to_set(g.num_vertices(), sigma), threshold).vertices();
      },
      py::arg("graph"), py::arg("sigma"), py::arg("threshold") = -1.0);
  m.def("count_isolated", &count_isolated);

  // collider
  m.def("find_augmenting",
        [](const Graph& g, const std::vector<uint32_t>& sigma,
           const std::vector<uint32_t>& tau) -> py::object {
          auto w = find_augmenting(g, to_set(g.num_vertices(), sigma),
                                   to_set(g.num_vertices(), tau));
          if (!w) return py::none();
          py::dict d;
          d["v"] = w->v;
          d["case"] = w->kind == AugmentingWitness::Kind::A ? "A" : "B";
          d["term_sigma"] = w->term_sigma.vertices();
          d["term_tau"] = w->term_tau.vertices();
          return d;
        });
  m.def(
      "connect_path",
      [](const Graph& g, const std::vector<uint32_t>& sigma, const std::vector<uint32_t>& tau,
         uint64_t max_rounds) {
        PathResult r = connect_path(g, to_set(g.num_vertices(), sigma),
                                    to_set(g.num_vertices(), tau), max_rounds);
        py::dict d;
        d["success"] = r.success;
        d["rounds"] = r.rounds_used;
        if (r.success) {
          py::list steps, via;
          for (const auto& s : r.certificate.steps) steps.append(s.vertices());
          for (const auto& s : r.certificate.via) via.append(s.vertices());
          d["steps"] = steps;
          d["via"] = via;
          d["max_step_distance"] = r.certificate.max_step_distance;
        } else {
          d["stuck_sigma"] = r.final_sigma.vertices();
          d["stuck_tau"] = r.final_tau.vertices();
        }
        return d;
      },
      py::arg("graph"), py::arg("sigma"), py::arg("tau"), py::arg("max_rounds"));

  // metropolis
  m.def(
      "mp_run",
      [](const Graph& g, const std::vector<uint32_t>& start, double lambda, uint64_t steps,
         uint64_t stride, uint64_t seed, const std::vector<uint32_t>& targets) {
        ChainTrace t =
            mp_run(g, to_set(g.num_vertices(), start), lambda, steps, stride, seed, targets);
        py::dict d;
        d["sizes"] = t.sizes;
        py::dict hits;
        for (const auto& [target, step] : t.hit_times)
          hits[py::int_(target)] = step ? py::object(py::int_(*step)) : py::none();
        d["hit_times"] = hits;
        return d;
      },
      py::arg("graph"), py::arg("start"), py::arg("lambda"), py::arg("steps"), py::arg("stride"),
      py::arg("seed"), py::arg("targets") = std::vector<uint32_t>{});
  m.def(
      "stationary_exact",
      [](const Graph& g, double lambda, uint64_t budget) {
        StationaryTable t = stationary_exact(g, lambda, budget);
        py::dict d;
        d["lambda"] = t.lambda;
        d["z_log"] = t.z.log_mag;
        d["z"] = t.z.to_double();
        d["mu"] = t.mu;
        d["weights"] = t.weights;
        d["truncated"] = t.truncated;
        return d;
      },
      py::arg("graph"), py::arg("lambda"), py::arg("budget") = uint64_t(20'000));
  m.def("weight_profile", &weight_profile, py::arg("graph"), py::arg("lambda"),
        py::arg("max_nodes_per_layer") = uint64_t(100'000'000));
  m.def("tv_distance", &tv_distance);
  m.def(
      "mixing_time_exact",
      [](const Graph& g, double lambda, uint64_t budget, uint64_t horizon) {
        MixingResult r = mixing_time_exact(g, lambda, budget, horizon);
        py::dict d;
        d["T"] = r.t_mix ? py::object(py::int_(*r.t_mix)) : py::none();
        py::list taus;
        for (const auto& t : r.tau) taus.append(t ? py::object(py::int_(*t)) : py::none());
        d["tau"] = taus;
        d["horizon"] = r.horizon;
        return d;
      },
      py::arg("graph"), py::arg("lambda"), py::arg("budget") = uint64_t(20'000),
      py::arg("horizon") = uint64_t(4'096));
  m.def(
      "escape_experiment",
      [](const Graph& g, const std::vector<uint32_t>& sigma0, double lambda, double floor,
         uint64_t steps, uint64_t seed) -> py::object {
        auto esc =
            escape_experiment(g, to_set(g.num_vertices(), sigma0), lambda, floor, steps, seed);
        if (!esc) return py::none();
        return py::int_(*esc);
      },
      py::arg("graph"), py::arg("sigma0"), py::arg("lambda"), py::arg("overlap_floor"),
      py::arg("steps"), py::arg("seed"));
}
