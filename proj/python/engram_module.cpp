#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "engram/lifecycle.hpp"
#include "engram/manifest.hpp"
#include "engram/simulation.hpp"
#include "engram/snapshot.hpp"
#include "engram/workload.hpp"

namespace py = pybind11;
using namespace engram;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Config config_from_mapping(const py::dict& mapping) {
  Config c;
  for (const auto& [key_obj, value] : mapping) {
    const std::string key = py::cast<std::string>(key_obj);
    auto as_size = [&]() -> std::size_t {
      if (py::isinstance<py::bool_>(value) || !py::isinstance<py::int_>(value)) {
        throw ConfigError(key + " must be an integer");
      }
      const auto v = py::cast<long long>(value);
      if (v < 0) throw ConfigError(key + " must be non-negative");
      return static_cast<std::size_t>(v);
    };
    auto as_real = [&]() -> double {
      if (py::isinstance<py::bool_>(value) ||
          !(py::isinstance<py::int_>(value) || py::isinstance<py::float_>(value))) {
        throw ConfigError(key + " must be a number");
      }
      return py::cast<double>(value);
    };
    if (key == "dim") c.dim = as_size();
    else if (key == "n_wm") c.n_wm = as_size();
    else if (key == "stm_capacity") c.stm_capacity = as_size();
    else if (key == "n_stm_rem") c.n_stm_rem = as_size();
    else if (key == "n_ltm_rem") c.n_ltm_rem = as_size();
    else if (key == "n_depth") c.n_depth = as_size();
    else if (key == "initial_lifespan") c.initial_lifespan = as_real();
    else if (key == "alpha") c.alpha = as_real();
    else throw ConfigError("unknown config key: " + key);
  }
  c.validate();
  return c;
}

std::vector<Vector> rows_of(const RealArray& a, std::size_t dim) {
  if (a.ndim() != 2) throw ShapeError("vectors must be a 2-D array, got " + std::to_string(a.ndim()) + "-D");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto d = static_cast<std::size_t>(a.shape(1));
  if (d != dim) throw ShapeError("vectors have dimension " + std::to_string(d) + ", engine expects " + std::to_string(dim));
  std::vector<Vector> out(n, Vector(d));
  const double* p = a.data();
  for (std::size_t i = 0; i < n; ++i) std::copy(p + i * d, p + (i + 1) * d, out[i].begin());
  return out;
}

py::array_t<std::int64_t> id_array(const std::vector<EngramId>& ids) {
  const std::vector<std::int64_t> wide(ids.begin(), ids.end());
  return py::array_t<std::int64_t>(static_cast<py::ssize_t>(wide.size()), wide.data());
}

py::array_t<double> vector_array(const MemoryState& s, const std::vector<EngramId>& ids) {
  const std::size_t d = s.config().dim;
  py::array_t<double> out({static_cast<py::ssize_t>(ids.size()), static_cast<py::ssize_t>(d)});
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Vector& v = s.engram(ids[i]).vector;
    std::copy(v.begin(), v.end(), p + i * d);
  }
  return out;
}

// Serializes the two-phase protocol; concurrent callers are rejected.
class EngineHandle {
 public:
  explicit EngineHandle(const Config& c) : engine_(c) {}

  py::tuple retrieve(const RealArray& vectors) {
    auto lock = acquire();
    const auto rows = rows_of(vectors, engine_.state().config().dim);
    {
      py::gil_scoped_release release;
      engine_.begin_step(rows);
    }
    const RetrievalResult& r = engine_.pending();
    const MemoryState& s = engine_.state();
    py::dict ids, vecs;
    ids["wm"] = id_array(r.wm);
    ids["stm"] = id_array(r.stm_rem);
    ids["ltm"] = id_array(r.ltm_rem);
    ids["ltm_found"] = id_array(r.ltm_found);
    vecs["wm"] = vector_array(s, r.wm);
    vecs["stm"] = vector_array(s, r.stm_rem);
    vecs["ltm"] = vector_array(s, r.ltm_rem);
    const auto rem = r.remembered();
    py::array_t<double> scores(static_cast<py::ssize_t>(rem.size()));
    for (std::size_t i = 0; i < rem.size(); ++i) scores.mutable_data()[i] = r.scores.at(rem[i]);
    return py::make_tuple(ids, vecs, scores);
  }

  py::dict feedback_and_step(const RealArray& weights) {
    auto lock = acquire();
    if (!engine_.has_pending()) throw SequencingError("feedback_and_step called without a pending retrieve");
    const auto rem = engine_.pending().remembered();
    if (weights.ndim() != 1 || static_cast<std::size_t>(weights.shape(0)) != rem.size()) {
      throw ContractError("expected " + std::to_string(rem.size()) + " weights, one per remembered engram");
    }
    ContributionWeights w;
    for (std::size_t i = 0; i < rem.size(); ++i) w[rem[i]] = weights.data()[i];
    StepReport report;
    {
      py::gil_scoped_release release;
      report = engine_.complete_step(w);
    }
    py::dict stats;
    stats["step"] = report.step;
    stats["pruned_count"] = report.pruned.size();
    stats["ltm_size"] = report.ltm_size;
    stats["stm_size"] = report.stm_size;
    stats["total_lifespan"] = report.total_lifespan;
    return stats;
  }

  void reset() {
    auto lock = acquire();
    engine_.reset();
  }

  void snapshot(const std::string& path) {
    auto lock = acquire();
    const std::string text = serialize_snapshot(engine_.state());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing " + path);
  }

  std::string snapshot_text() {
    auto lock = acquire();
    return serialize_snapshot(engine_.state());
  }

  bool has_pending() {
    auto lock = acquire();
    return engine_.has_pending();
  }

  py::dict config() {
    auto lock = acquire();
    const Config& c = engine_.state().config();
    py::dict d;
    d["dim"] = c.dim;
    d["n_wm"] = c.n_wm;
    d["stm_capacity"] = c.stm_capacity;
    d["n_stm_rem"] = c.n_stm_rem;
    d["n_ltm_rem"] = c.n_ltm_rem;
    d["n_depth"] = c.n_depth;
    d["initial_lifespan"] = c.initial_lifespan;
    d["alpha"] = c.alpha;
    return d;
  }

 private:
  std::unique_lock<std::mutex> acquire() {
    std::unique_lock<std::mutex> lock(mutex_, std::try_to_lock);
    if (!lock.owns_lock()) throw SequencingError("engine handle is already in use by another caller");
    return lock;
  }

  Engine engine_;
  std::mutex mutex_;
};

py::list workload_of(const std::string& manifest_text) {
  const RunManifest m = parse_manifest(manifest_text);
  WorkloadSpec spec = m.workload;
  spec.seed = m.seed;
  py::list out;
  for (const auto& step : generate_workload(spec)) {
    py::array_t<double> a({static_cast<py::ssize_t>(step.vectors.size()), static_cast<py::ssize_t>(m.workload.dim)});
    for (std::size_t i = 0; i < step.vectors.size(); ++i) {
      std::copy(step.vectors[i].begin(), step.vectors[i].end(), a.mutable_data() + i * m.workload.dim);
    }
    out.append(py::make_tuple(a, step.label));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_engram, m) {
  m.doc() = "Engram memory engine: two-phase retrieve / feedback interface for host training loops";

  auto base = py::register_exception<Error>(m, "EngramError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<SequencingError>(m, "SequencingError", base.ptr());
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<EngineHandle>(m, "Engine")
      .def(py::init([](const py::dict& config) { return std::make_unique<EngineHandle>(config_from_mapping(config)); }),
           py::arg("config") = py::dict())
      .def("retrieve", &EngineHandle::retrieve, py::arg("vectors"),
           "Add an [n, d] batch to working memory and retrieve. Returns (ids, vectors, scores): ids and vectors "
           "are keyed by tier; scores follow stm then ltm order.")
      .def("feedback_and_step", &EngineHandle::feedback_and_step, py::arg("weights"),
           "Contribution weights for the remembered engrams, in retrieve order. Completes the step.")
      .def("reset", &EngineHandle::reset)
      .def("snapshot", &EngineHandle::snapshot, py::arg("path"))
      .def("snapshot_text", &EngineHandle::snapshot_text)
      .def_property_readonly("has_pending", &EngineHandle::has_pending)
      .def_property_readonly("config", &EngineHandle::config);

  m.def("create", [](const py::dict& config) { return std::make_unique<EngineHandle>(config_from_mapping(config)); },
        py::arg("config") = py::dict());
  m.def("workload", &workload_of, py::arg("manifest"),
        "The manifest's input stream as a list of ([n, d] array, topic label).");
  m.def(
      "simulate_snapshot",
      [](const std::string& manifest_text) {
        const RunManifest manifest = parse_manifest(manifest_text);
        py::gil_scoped_release release;
        return serialize_snapshot(run_simulation(manifest).final_state);
      },
      py::arg("manifest"), "Final snapshot text of a native run of the manifest.");
}
