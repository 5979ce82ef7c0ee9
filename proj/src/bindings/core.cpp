#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cantor/clopen.hpp"
#include "cantor/errors.hpp"
#include "cantor/exactnum.hpp"
#include "cantor/oracle.hpp"
#include "cantor/seqcomb.hpp"
#include "cantor/setspec.hpp"
#include "cantor/verify.hpp"

namespace py = pybind11;
using namespace cantor;
using nlohmann::json;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python side turns them into Fractions.
using Bounds = std::pair<std::string, std::string>;

Bounds bounds(const RatInterval& r) { return {to_string(r.lo), to_string(r.hi)}; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("invalid JSON: ") + e.what());
  }
}

class PySet {
 public:
  explicit PySet(const std::string& spec) : spec_(parse(spec)), oracle_(load_set(spec_)) {}

  Bounds local_bounds(const std::string& prefix, unsigned budget) const {
    py::gil_scoped_release release;
    return bounds(oracle_->local_bounds(BitWord::parse(prefix), budget));
  }

  std::vector<std::tuple<std::size_t, std::string, std::string>> trace_at(const std::string& branch, std::size_t steps,
                                                                         unsigned budget) const {
    auto z = Branch::from_json(parse(branch));
    std::vector<TracePoint> pts;
    {
      py::gil_scoped_release release;
      pts = trace(*oracle_, z, steps, budget);
    }
    std::vector<std::tuple<std::size_t, std::string, std::string>> out;
    for (const auto& p : pts) out.emplace_back(p.n, to_string(p.bounds.lo), to_string(p.bounds.hi));
    return out;
  }

  std::string classify_at(const std::string& branch, const std::string& eps, std::size_t max_depth,
                          unsigned budget) const {
    auto z = Branch::from_json(parse(branch));
    Rational e = parse_rational(eps);
    if (e <= 0) throw SpecError("eps must be positive");
    py::gil_scoped_release release;
    return classify(*oracle_, z, e, max_depth, budget).to_json().dump();
  }

  std::string kind() const { return oracle_->kind(); }
  std::string spec() const { return spec_.dump(); }

 private:
  json spec_;
  OraclePtr oracle_;
};

std::vector<std::uint64_t> entries(const NatWord& u) { return u.entries(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact density computations on Cantor space";

  static py::exception<SpecError> spec_error(m, "SpecError", PyExc_ValueError);
  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SpecError& e) {
      PyErr_SetString(spec_error.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), e.what());
    }
  });

  py::class_<PySet>(m, "Set")
      .def(py::init<const std::string&>(), py::arg("spec"))
      .def("local_bounds", &PySet::local_bounds, py::arg("prefix") = "", py::arg("budget") = kDefaultBudget)
      .def("trace", &PySet::trace_at, py::arg("branch"), py::arg("steps"), py::arg("budget") = kDefaultBudget)
      .def("classify", &PySet::classify_at, py::arg("branch"), py::arg("eps") = "1/256", py::arg("max_depth") = 120,
           py::arg("budget") = kDefaultBudget)
      .def_property_readonly("kind", &PySet::kind)
      .def_property_readonly("spec", &PySet::spec);

  m.def("encode_check", [](const std::vector<std::uint64_t>& t) { return encode_check(NatWord(t)).str(); });
  m.def("decode_hat", [](const std::string& s) { return entries(decode_hat(BitWord::parse(s))); });
  m.def("head_tail", [](const std::string& s) {
    auto ht = head_tail(BitWord::parse(s));
    return std::make_pair(ht.head.str(), ht.zero_tail);
  });
  m.def("stretch", [](const std::string& s) { return stretch(BitWord::parse(s)).str(); });
  m.def("interleave",
        [](const std::string& x, const std::string& y) { return interleave(BitWord::parse(x), BitWord::parse(y)).str(); });
  m.def("ltimes", [](const std::string& t, const std::vector<std::uint64_t>& u) {
    return ltimes(BitWord::parse(t), NatWord(u)).str();
  });
  m.def("four_ary_digits", [](const std::string& r, std::size_t count) {
    return four_ary_digits(parse_rational(r), count);
  });
  m.def("least_dyadic_in", [](const std::string& lo, const std::string& hi) {
    return to_string(least_dyadic_in(parse_rational(lo), parse_rational(hi)).value());
  });
  m.def("canonical_of_measure", [](const std::string& d) {
    auto set = canonical_of_measure(parse_rational(d));
    std::vector<std::string> out;
    for (const auto& w : set.words()) out.push_back(w.str());
    return out;
  });

  m.def("suites", [] {
    std::vector<std::tuple<std::string, std::size_t, std::string>> out;
    for (const auto& s : suites()) out.emplace_back(s.name, s.default_cases, s.summary);
    return out;
  });
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::size_t cases) {
        py::gil_scoped_release release;
        return run_suite(name, seed, cases).to_json().dump();
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("cases") = 0);
}
