#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "singmod/casecheck.hpp"
#include "singmod/isogeny.hpp"
#include "singmod/jfun.hpp"
#include "singmod/quadforms.hpp"
#include "singmod/relations.hpp"
#include "singmod/searches.hpp"

namespace py = pybind11;
using namespace singmod;

namespace {

py::int_ to_py(const Int& v) { return py::cast(v.get_str()).cast<py::int_>(); }

Int from_py(const py::int_& v) { return Int(py::str(v).cast<std::string>()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "singular-moduli toolkit core";

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<resource_error>(m, "ResourceError");

    m.def("class_number", [](std::int64_t delta) { return qf::class_number(delta); });
    m.def("split_discriminant", [](std::int64_t delta) {
        auto d = qf::split_discriminant(delta);
        return py::make_tuple(d.fundamental, d.conductor);
    });
    m.def("reduced_forms", [](std::int64_t delta) {
        std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> out;
        for (const auto& f : qf::reduced_forms(delta)) out.emplace_back(f.a, f.b, f.c);
        return out;
    });
    m.def("reduce_form", [](std::int64_t a, std::int64_t b, std::int64_t c) {
        auto f = qf::reduce_form(a, b, c);
        return py::make_tuple(f.a, f.b, f.c);
    });
    m.def("compose", [](std::tuple<std::int64_t, std::int64_t, std::int64_t> f,
                        std::tuple<std::int64_t, std::int64_t, std::int64_t> g) {
        auto r = qf::compose(qf::ReducedForm{std::get<0>(f), std::get<1>(f), std::get<2>(f)},
                             qf::ReducedForm{std::get<0>(g), std::get<1>(g), std::get<2>(g)});
        return py::make_tuple(r.a, r.b, r.c);
    });
    m.def("psi", [](std::int64_t ell, std::int64_t delta) {
        return to_py(qf::psi(ell, qf::split_discriminant(delta)));
    });
    m.def("kronecker",
          [](py::int_ D, py::int_ n) { return arith::kronecker(from_py(D), from_py(n)); });
    m.def("class_group_summary", [](std::int64_t delta) {
        auto s = qf::class_group_summary(delta);
        return py::make_tuple(s.h, s.two_torsion, s.is_two_elementary, s.is_almost_two_elementary);
    });
    m.def("s_of_a", &qf::s_of_a);
    m.def("denominator_count_bounds", &qf::denominator_count_bounds);
    m.def("admits_denominator", [](std::int64_t delta, std::int64_t a) {
        return qf::admits_denominator(qf::split_discriminant(delta), a);
    });

    m.def("q_set", [](std::int64_t n) {
        std::vector<std::string> out;
        for (const auto& r : iso::q_set(n).ratios) out.push_back(r.get_str());
        return out;
    });
    m.def("construct_isogeny_degree",
          [](std::tuple<std::int64_t, std::int64_t, std::int64_t> f, std::int64_t dx,
             std::tuple<std::int64_t, std::int64_t, std::int64_t> g, std::int64_t dy) -> py::object {
              auto deg = iso::construct_isogeny_degree(
                  {qf::ReducedForm{std::get<0>(f), std::get<1>(f), std::get<2>(f)},
                   qf::split_discriminant(dx)},
                  {qf::ReducedForm{std::get<0>(g), std::get<1>(g), std::get<2>(g)},
                   qf::split_discriminant(dy)});
              if (!deg) return py::none();
              return py::cast(*deg);
          });

    m.def("j_coefficients", [](int n) {
        std::vector<py::int_> out;
        auto c = jfun::j_coefficients(n);
        for (int k = -1; k <= c.max_index(); ++k) out.push_back(to_py(c.at(k)));
        return out;
    });
    m.def(
        "singular_modulus",
        [](std::tuple<std::int64_t, std::int64_t, std::int64_t> f, std::int64_t delta, long prec) {
            auto v = jfun::singular_modulus(qf::ReducedForm{std::get<0>(f), std::get<1>(f), std::get<2>(f)},
                                            qf::split_discriminant(delta), prec);
            return v.to_string(static_cast<int>(prec / 3));
        },
        py::arg("form"), py::arg("delta"), py::arg("prec_bits") = 128);
    m.def("singular_modulus_integer",
          [](std::tuple<std::int64_t, std::int64_t, std::int64_t> f, std::int64_t delta) {
              return to_py(jfun::singular_modulus_integer(
                  qf::ReducedForm{std::get<0>(f), std::get<1>(f), std::get<2>(f)},
                  qf::split_discriminant(delta)));
          });
    m.def("verify_expansion_constants", [](long prec) {
        auto rep = jfun::verify_expansion_constants(prec);
        std::vector<std::tuple<std::string, std::string, std::string, bool>> checks;
        for (const auto& c : rep.checks) checks.emplace_back(c.label, c.computed, c.limit, c.ok);
        return py::make_tuple(rep.all_ok, checks);
    }, py::arg("prec_bits") = 256);

    m.def("masser_basis_bound",
          [](int k, py::int_ X, int ell) { return to_py(rel::masser_basis_bound(k, from_py(X), ell)); });
    m.def("erootofy_holds", &rel::erootofy_holds);
    m.def("eassumpdelta_holds", [](int k, std::int64_t X, std::int64_t core, std::int64_t A,
                                   const std::string& eps) {
        Rat e(eps);
        e.canonicalize();
        return rel::eassumpdelta_holds(k, X, core, A, e);
    });
    m.def("verify_relation_exact",
          [](const std::vector<py::int_>& values, const std::vector<py::int_>& exps) {
              std::vector<Int> v, e;
              for (const auto& x : values) v.push_back(from_py(x));
              for (const auto& x : exps) e.push_back(from_py(x));
              return rel::verify_relation_exact(v, e);
          });
    m.def("relation_lattice_bruteforce",
          [](const std::vector<py::int_>& values, std::int64_t cap) {
              std::vector<Int> v;
              for (const auto& x : values) v.push_back(from_py(x));
              std::vector<std::vector<py::int_>> out;
              for (const auto& row : rel::relation_lattice_bruteforce(v, cap)) {
                  std::vector<py::int_> r;
                  for (const auto& c : row) r.push_back(to_py(c));
                  out.push_back(std::move(r));
              }
              return out;
          });

    m.def("sieve_report", [](std::int64_t bound, std::int64_t maxh, int threads) {
        auto rep = searches::sieve_report(bound, maxh, threads);
        return py::make_tuple(rep.max_abs_delta_found, rep.count_qualifying);
    }, py::arg("bound"), py::arg("max_h"), py::arg("threads") = 0);
    m.def("watkins_extension_bound", [] {
        std::int64_t f = 0;
        auto b = searches::watkins_extension_bound(&f);
        return py::make_tuple(b, f);
    });

    m.def("check_all_cases", [] {
        auto rep = cases::check_all_cases();
        std::vector<std::tuple<std::string, int, int, int, int, int>> rows;
        for (const auto& r : rep.rows)
            rows.emplace_back(r.case_id, r.systems, r.trivial, r.vacuous, r.infeasible, r.failed);
        return py::make_tuple(rep.pass, rep.strict_pass, rep.total_systems, rep.table3_core_systems, rows);
    });
}
