#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vilenkin/errors.hpp"
#include "vilenkin/io.hpp"

namespace py = pybind11;
using namespace vilenkin;

namespace {

PhaseTable phases_from_dict(int p, const py::dict& d) {
    PhaseTable t;
    for (const auto& item : d) {
        Window w = item.first.cast<Window>();
        RootScalar v = RootScalar::one(p);
        if (py::isinstance<py::int_>(item.second))
            v = RootScalar::root(p, item.second.cast<long>());
        else
            v = RootScalar::unimodular(p, item.second.cast<std::complex<double>>());
        t.insert_or_assign(w, v);
    }
    return t;
}

py::list hat_items(const PhiTable& ph) {
    py::list out;
    for (const auto& [coset, v] : ph.hat()) out.append(py::make_tuple(coset.word(), v.to_complex()));
    return out;
}

std::vector<std::complex<double>> complex_values(const std::vector<RootSum>& vals) {
    std::vector<std::complex<double>> out;
    out.reserve(vals.size());
    for (const auto& v : vals) out.push_back(v.to_complex());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Orthogonal MRA and wavelet construction on p-adic Vilenkin groups";

    py::register_exception<MaskError>(m, "MaskError");
    py::register_exception<ConsistencyError>(m, "ConsistencyError");
    py::register_exception<ResourceError>(m, "ResourceError");
    py::register_exception<FormatError>(m, "FormatError");

    py::class_<CheckItem>(m, "CheckItem")
        .def_readonly("name", &CheckItem::name)
        .def_readonly("passed", &CheckItem::pass)
        .def_readonly("deviation", &CheckItem::deviation)
        .def_readonly("detail", &CheckItem::detail)
        .def("__repr__", [](const CheckItem& c) {
            return "<" + std::string(c.pass ? "PASS " : "FAIL ") + c.name + ">";
        });

    py::class_<Report>(m, "Report")
        .def_readonly("items", &Report::items)
        .def_readonly("notes", &Report::notes)
        .def("all_pass", &Report::all_pass)
        .def("max_deviation", &Report::max_deviation)
        .def("__repr__", [](const Report& r) {
            std::size_t ok = 0;
            for (const auto& c : r.items) ok += c.pass;
            return "<Report " + std::to_string(ok) + "/" + std::to_string(r.items.size()) +
                   " checks passed>";
        });

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("valid", &ValidationReport::valid)
        .def_readonly("height", &ValidationReport::height)
        .def_readonly("zero_prefix_ok", &ValidationReport::zero_prefix_ok)
        .def_readonly("missing", &ValidationReport::missing)
        .def_readonly("duplicated", &ValidationReport::duplicated)
        .def_readonly("structural_errors", &ValidationReport::structural_errors)
        .def_readonly("window_counts", &ValidationReport::window_counts);

    py::class_<PTree>(m, "Tree")
        .def_property_readonly("p", &PTree::p)
        .def_property_readonly("N", &PTree::N)
        .def_property_readonly("node_count", &PTree::node_count)
        .def("height", &PTree::height)
        .def("nodes",
             [](const PTree& t) {
                 py::list out;
                 for (const auto& n : t.nodes()) {
                     py::dict rec;
                     rec["id"] = n.id;
                     rec["label"] = n.label;
                     rec["parent"] = n.parent < 0 ? py::none().cast<py::object>() : py::cast(n.parent);
                     out.append(rec);
                 }
                 return out;
             })
        .def("to_json", [](const PTree& t) { return tree_to_json(t).dump(2); })
        .def("to_dot", &tree_to_dot)
        .def("__eq__", [](const PTree& a, const PTree& b) { return a == b; })
        .def("__repr__", [](const PTree& t) {
            return "<Tree p=" + std::to_string(t.p()) + " N=" + std::to_string(t.N()) +
                   " nodes=" + std::to_string(t.node_count()) + ">";
        });

    py::class_<Mask>(m, "Mask")
        .def_property_readonly("p", &Mask::p)
        .def_property_readonly("N", &Mask::N)
        .def("value_at", [](const Mask& m, const std::vector<int>& word) {
            return m.at_word(word).to_complex();
        })
        .def("nonzero",
             [](const Mask& m) {
                 py::list out;
                 for (std::size_t k : m.nonzero_indices())
                     out.append(py::make_tuple(m.word_of(k), m.at(k).to_complex()));
                 return out;
             })
        .def("__repr__", [](const Mask& m) {
            return "<Mask p=" + std::to_string(m.p()) + " N=" + std::to_string(m.N()) + ">";
        });

    py::class_<CoefficientTable>(m, "CoefficientTable")
        .def_property_readonly("p", &CoefficientTable::p)
        .def_property_readonly("N", &CoefficientTable::N)
        .def("values",
             [](const CoefficientTable& b) {
                 std::vector<std::complex<double>> out;
                 for (std::size_t j = 0; j < b.size(); ++j) out.push_back(b.at(j).to_complex());
                 return out;
             })
        .def("digits_of", &CoefficientTable::digits_of)
        .def("sum_norm2", [](const CoefficientTable& b) { return b.sum_norm2().to_complex(); });

    py::class_<ElementarySet>(m, "ElementarySet")
        .def_property_readonly("p", &ElementarySet::p)
        .def_property_readonly("N", &ElementarySet::N)
        .def_property_readonly("M", &ElementarySet::M)
        .def("words",
             [](const ElementarySet& e) {
                 py::list out;
                 for (const auto& c : e.cosets()) out.append(c.word());
                 return out;
             })
        .def("__len__", &ElementarySet::size)
        .def("__repr__", [](const ElementarySet& e) {
            return "<ElementarySet N=" + std::to_string(e.N()) + " M=" + std::to_string(e.M()) +
                   " cosets=" + std::to_string(e.size()) + ">";
        });

    py::class_<PhiTable>(m, "PhiTable")
        .def_property_readonly("p", &PhiTable::p)
        .def_property_readonly("N", &PhiTable::N)
        .def_property_readonly("M", &PhiTable::M)
        .def("hat", &hat_items)
        .def("values", [](const PhiTable& ph) { return complex_values(ph.values()); })
        .def("value_word", &PhiTable::value_word);

    py::class_<WaveletBank>(m, "WaveletBank")
        .def_property_readonly("p", &WaveletBank::p)
        .def_property_readonly("N", &WaveletBank::N)
        .def_property_readonly("M", &WaveletBank::M)
        .def("psi", [](const WaveletBank& b, int l) {
            if (l < 1 || l >= b.p()) throw std::invalid_argument("l must lie in [1, p)");
            return complex_values(b.psi_tables()[static_cast<std::size_t>(l - 1)]);
        })
        .def("beta", [](const WaveletBank& b, int l) -> const CoefficientTable& {
            if (l < 1 || l >= b.p()) throw std::invalid_argument("l must lie in [1, p)");
            return b.coefficient_tables()[static_cast<std::size_t>(l - 1)];
        }, py::return_value_policy::reference_internal);

    py::class_<FiniteSignal>(m, "Signal")
        .def(py::init([](int p, int R, int S, std::vector<std::complex<double>> samples) {
                 FiniteSignal f{p, R, S, std::move(samples)};
                 if (f.samples.size() != f.expected_size())
                     throw std::invalid_argument("expected p^(R+S) samples");
                 return f;
             }),
             py::arg("p"), py::arg("R"), py::arg("S"), py::arg("samples"))
        .def_readonly("p", &FiniteSignal::p)
        .def_readonly("R", &FiniteSignal::R)
        .def_readonly("S", &FiniteSignal::S)
        .def_readonly("samples", &FiniteSignal::samples)
        .def("norm2", &FiniteSignal::norm2)
        .def("word_of", &FiniteSignal::word_of);

    py::class_<CoefficientBundle>(m, "Coefficients")
        .def_readonly("p", &CoefficientBundle::p)
        .def_readonly("R", &CoefficientBundle::R)
        .def_readonly("S", &CoefficientBundle::S)
        .def_readonly("levels", &CoefficientBundle::levels)
        .def_readonly("approx", &CoefficientBundle::approx)
        .def_readonly("details", &CoefficientBundle::details)
        .def("energy", &CoefficientBundle::energy);

    py::class_<MraBundle>(m, "MraBundle")
        .def_property_readonly("tree",
                               [](const MraBundle& b) -> py::object {
                                   if (!b.tree) return py::none();
                                   return py::cast(*b.tree);
                               })
        .def_readonly("mask", &MraBundle::mask)
        .def_readonly("support", &MraBundle::support)
        .def_readonly("phi", &MraBundle::phi)
        .def_readonly("beta", &MraBundle::beta)
        .def("to_json", [](const MraBundle& b) { return bundle_to_json(b).dump(2); });

    // Trees.
    m.def("build_tree",
          [](int p, int N, const std::string& strategy, std::uint64_t seed) {
              return build_nvalid(p, N, parse_strategy(strategy), seed);
          },
          py::arg("p"), py::arg("N"), py::arg("strategy") = "debruijn-path", py::arg("seed") = 0);
    m.def("validate_tree", &validate_nvalid);
    m.def("enumerate_trees",
          [](int p, int N, std::size_t limit) { return enumerate_nvalid(p, N, limit); },
          py::arg("p"), py::arg("N"), py::arg("limit") = SIZE_MAX);
    m.def("allowed_windows", [](const PTree& t) {
        std::set<Window> w = allowed_windows(t);
        return std::vector<Window>(w.begin(), w.end());
    });
    m.def("tree_from_support", [](const std::vector<Window>& wins, int p, int N) {
        return tree_from_support(std::set<Window>(wins.begin(), wins.end()), p, N);
    });
    m.def("tree_from_json", [](const std::string& text) { return tree_from_json(json::parse(text)); });

    // Masks and coefficients.
    m.def("mask_from_tree",
          [](const PTree& t, const py::object& phases) {
              if (phases.is_none()) return mask_from_tree(t);
              PhaseTable table = phases_from_dict(t.p(), phases.cast<py::dict>());
              return mask_from_tree(t, &table);
          },
          py::arg("tree"), py::arg("phases") = py::none());
    m.def("check_mask", &check_mask);
    m.def("solve_coefficients", &solve_coefficients);
    m.def("wavelet_shift_masks", &wavelet_shift_masks);
    m.def("wavelet_coefficients", &wavelet_coefficients);

    // Support sets and the refinable function.
    m.def("support_set", &support_set, py::arg("mask"), py::arg("require_elementary") = true);
    m.def("support_set_bruteforce", &support_set_bruteforce, py::arg("mask"), py::arg("M"),
          py::arg("cross_check") = true);
    m.def("is_elementary",
          [](const ElementarySet& e, bool full) {
              return is_elementary(e, full ? ElementaryChecks::Full : ElementaryChecks::Tiling);
          },
          py::arg("support"), py::arg("full") = true);
    m.def("phi_table", [](const Mask& mask, const ElementarySet& support) {
        PhiTable ph = phi_hat(mask, support);
        phi_values(ph);
        return ph;
    });
    m.def("verify_shift_orthonormality", &verify_shift_orthonormality, py::arg("phi"),
          py::arg("depth") = 2, py::arg("tol") = 1e-10);
    m.def("verify_refinement", &verify_refinement, py::arg("phi"), py::arg("mask"), py::arg("beta"),
          py::arg("tol") = 1e-12);

    // Wavelets.
    m.def("build_bank", &build_bank);
    m.def("verify_wavelets", &verify_wavelets, py::arg("bank"), py::arg("phi"), py::arg("support"),
          py::arg("mask"), py::arg("depth") = 2, py::arg("tol") = 1e-10);

    // Transforms.
    m.def("analyze", &analyze, py::arg("signal"), py::arg("phi"), py::arg("bank"), py::arg("beta"),
          py::arg("levels") = 1);
    m.def("synthesize", &synthesize, py::arg("coefficients"), py::arg("phi"), py::arg("bank"),
          py::arg("beta"));
    m.def("energy_report", &energy_report, py::arg("signal"), py::arg("coefficients"),
          py::arg("phi"), py::arg("bank"), py::arg("beta"), py::arg("tol") = 1e-10);

    // One-call pipeline.
    m.def("derive",
          [](const PTree& t, const py::object& phases) {
              Mask mask = phases.is_none() ? mask_from_tree(t) : [&] {
                  PhaseTable table = phases_from_dict(t.p(), phases.cast<py::dict>());
                  return mask_from_tree(t, &table);
              }();
              ElementarySet support = support_set(mask, false);
              PhiTable phi = phi_hat(mask, support);
              phi_values(phi);
              CoefficientTable beta = solve_coefficients(mask);
              return MraBundle{t, std::move(mask), std::move(support), std::move(phi),
                               std::move(beta)};
          },
          py::arg("tree"), py::arg("phases") = py::none());
    m.def("bundle_from_json",
          [](const std::string& text) { return bundle_from_json(json::parse(text)); });

    m.attr("__version__") = "0.1.0";
}
