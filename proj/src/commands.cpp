#include "malcev/commands.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace malcev::cli {

namespace {

using Clock = std::chrono::steady_clock;

RunReport run(std::string command, const Json &inputs, const std::function<Json(RunReport &)> &body)
{
    RunReport r;
    r.command = std::move(command);
    r.inputs_digest = io::digest(inputs);
    const auto start = Clock::now();
    r.verdicts = body(r);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

void render_text(std::ostringstream &out, const Json &j, int indent)
{
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    auto is_flat = [](const Json &a) {
        for (const auto &e : a)
            if (e.is_structured())
                return false;
        return true;
    };
    auto scalar = [](const Json &e) { return e.is_string() ? e.get<std::string>() : e.dump(); };
    for (const auto &[key, value] : j.items()) {
        const std::string label = j.is_array() ? "-" : key + ":";
        if (value.is_object() || (value.is_array() && !is_flat(value))) {
            out << pad << label << "\n";
            render_text(out, value, indent + 2);
        } else if (value.is_array()) {
            out << pad << label << " [";
            for (std::size_t i = 0; i < value.size(); ++i)
                out << (i ? ", " : "") << scalar(value[i]);
            out << "]\n";
        } else {
            out << pad << label << " " << scalar(value) << "\n";
        }
    }
}

Json verdict_json(const QuadraticVerdict &v)
{
    Json out;
    out["quadratic"] = v.quadratic;
    out["conclusive"] = v.conclusive;
    if (!v.quadratic) {
        out["failed_stage"] = v.failed_stage;
        out["failing_degree"] = v.failing_degree;
        out["kernel_dim"] = v.kernel_dim;
        out["ideal_dim"] = v.ideal_dim;
        out["defect"] = io::to_json(v.defect);
    } else {
        out["gr_degree_dims"] = v.gr.graded.degree_dims;
        out["presentation"] = io::to_json(v.presentation);
        out["theta"] = io::to_json(v.theta);
    }
    return out;
}

Cochain cochain_from_json(const Json &j)
{
    return Cochain{j.at("degree").get<std::size_t>(), io::vector_from_json(j.at("coords"))};
}

Json massey_json(const MasseyResult &m)
{
    return Json{{"degree", m.degree},
                {"x", io::to_json(m.x)},
                {"y", io::to_json(m.y)},
                {"representative", io::to_json(m.representative)},
                {"class", io::to_json(m.class_coords)},
                {"indeterminacy", io::to_json(m.indeterminacy)},
                {"vanishes", m.vanishes}};
}

Json lattice_json(const LatticeVerdict &v)
{
    Json out{{"closed", v.closed}, {"checked_pairs", v.checked_pairs}};
    if (!v.closed)
        out["witness"] = Json{{"a", io::to_json(*v.a)}, {"b", io::to_json(*v.b)}, {"product", io::to_json(*v.product)}};
    return out;
}

Json lift_json(const OneClassLift &r, const GroupPresentation &p)
{
    Json out{{"lifted", r.lifted}};
    Json defects = Json::array();
    for (const auto &d : r.defects)
        defects.push_back(Json{{"relator", p.format_word(p.relators.at(d.relator))}, {"log", io::to_json(d.log)}});
    out["defects"] = defects;
    if (r.lifted)
        out["assignment"] = io::to_json(p, r.assignment);
    else
        out["unresolved"] = io::to_json(r.unresolved);
    return out;
}

} // namespace

Json to_json(const RunReport &r, bool with_timing)
{
    Json out{{"command", r.command}, {"inputs_digest", r.inputs_digest}, {"completed", r.completed},
             {"verdicts", r.verdicts}};
    if (with_timing)
        out["seconds"] = r.seconds;
    return out;
}

std::string to_text(const RunReport &r, bool with_timing)
{
    std::ostringstream out;
    out << "command: " << r.command << "\ninputs: " << r.inputs_digest << "\n";
    if (!r.completed)
        out << "completed: false\n";
    render_text(out, r.verdicts, 0);
    if (with_timing)
        out << "seconds: " << r.seconds << "\n";
    return out.str();
}

RunReport cmd_hall(std::size_t generators, std::size_t class_bound)
{
    return run("hall", Json{{"generators", generators}, {"class", class_bound}}, [&](RunReport &) {
        const HallBasis hall(generators, class_bound);
        Json words = Json::array();
        for (std::size_t i = 0; i < hall.size(); ++i)
            words.push_back(Json{{"index", i}, {"word", io::word_to_json(hall, i)}, {"text", hall.to_string(i)}});
        return Json{{"count", hall.size()}, {"degree_counts", hall.degree_counts()}, {"words", words}};
    });
}

RunReport cmd_bch(const Json &x, const Json &y, std::size_t class_bound, std::size_t generators)
{
    const Json inputs{{"x", x}, {"y", y}, {"class", class_bound}, {"generators", generators}};
    return run("bch", inputs, [&](RunReport &) {
        const HallBasis hall(generators, class_bound);
        const LieAlgebra L = free_nilpotent(generators, class_bound);
        const Vector xv = hall.to_vector(io::free_element_from_json(hall, x));
        const Vector yv = hall.to_vector(io::free_element_from_json(hall, y));
        const FreeLieElement z = hall.from_vector(bch(xv, yv, L));
        Json text = Json::array();
        for (const auto &[w, c] : z.coords)
            text.push_back(format_scalar(c) + " " + hall.to_string(w));
        return Json{{"element", io::to_json(hall, z)}, {"terms", text}};
    });
}

RunReport cmd_quadcheck(const Json &algebra)
{
    return run("quadcheck", algebra, [&](RunReport &) {
        const LieAlgebra L = io::lie_algebra_from_json(algebra);
        const QuadraticVerdict v = is_quadratically_presented(L);
        Json out = verdict_json(v);
        if (v.quadratic)
            out["verified"] = verify_quadratic_verdict(L, v);
        out["lcs_dims"] = lcs_dims(L);
        return out;
    });
}

RunReport cmd_malcev_model(const Json &cup, std::size_t class_bound)
{
    return run("malcev-model", Json{{"cup", cup}, {"class", class_bound}}, [&](RunReport &) {
        const QuadraticPresentation qp = malcev_model(io::cup_datum_from_json(cup));
        const Realization r = realize(qp, class_bound);
        return Json{{"presentation", io::to_json(qp)},
                    {"class", class_bound},
                    {"degree_dims", r.degree_dims},
                    {"dim", r.algebra.dim()},
                    {"stabilized", r.stabilized},
                    {"algebra", io::to_json(r.algebra)}};
    });
}

RunReport cmd_mc(const Json &dga, const Json &coefficients, const std::optional<Json> &seed)
{
    Json inputs{{"dga", dga}, {"coefficients", coefficients}};
    if (seed)
        inputs["seed"] = *seed;
    return run("mc", inputs, [&](RunReport &) {
        const CoefficientDGLA C(io::dga_from_json(dga), io::lie_algebra_from_json(coefficients));
        std::optional<Vector> s;
        if (seed)
            s = io::vector_from_json(*seed);
        const MCSolveResult r = mc_solve(C, s);
        Json stages = Json::array();
        for (const auto &st : r.stages) {
            Json obstruction = Json::array();
            for (std::size_t b = 0; b < st.obstruction.size(); ++b)
                if (!is_zero(st.obstruction[b]))
                    obstruction.push_back(Json{{"gr_basis", b}, {"h2_class", io::to_json(st.obstruction[b])}});
            Json s_json{{"level", st.level}, {"gr_dim", st.gr_dim}, {"family_dim", st.family_dim},
                        {"obstructed", st.obstructed}};
            if (st.obstructed)
                s_json["obstruction"] = obstruction;
            else
                s_json["correction"] = io::to_json(st.correction);
            stages.push_back(s_json);
        }
        return Json{{"verdict", r.solved ? "solved" : "obstructed"},
                    {"h_betti", C.cohomology().betti()},
                    {"levels", C.levels()},
                    {"stages", stages},
                    {"element", io::to_json(r.element)}};
    });
}

RunReport cmd_massey(const Json &dga, const Json &a, const Json &b, const Json &c)
{
    return run("massey", Json{{"dga", dga}, {"a", a}, {"b", b}, {"c", c}}, [&](RunReport &) {
        const FiniteDGA A = io::dga_from_json(dga);
        return massey_json(massey_triple(A, cochain_from_json(a), cochain_from_json(b), cochain_from_json(c)));
    });
}

RunReport cmd_lift(const Json &presentation, const Json &target, const Json &assignment, std::size_t level)
{
    const Json inputs{{"presentation", presentation}, {"target", target}, {"assignment", assignment}, {"level", level}};
    return run("lift", inputs, [&](RunReport &) {
        const GroupPresentation p = io::group_presentation_from_json(presentation);
        const LieAlgebra T = io::lie_algebra_from_json(target);
        const SemidirectGroup G(T);
        const Assignment as = io::assignment_from_json(G, p, assignment);
        return lift_json(lift_one_class(p, T, as, level), p);
    });
}

RunReport cmd_lattice_check(const Json &algebra, const Json &lattice)
{
    return run("lattice-check", Json{{"algebra", algebra}, {"lattice", lattice}}, [&](RunReport &) {
        return lattice_json(
            lattice_closed_under_bch(io::lie_algebra_from_json(algebra), io::matrix_from_json(lattice)));
    });
}

// ---------------------------------------------------------------------------

namespace {

GroupPresentation heisenberg_group_presentation()
{
    GroupPresentation p{{"a", "b"}, {}};
    const GroupWord a{{0, 1}}, b{{1, 1}};
    const GroupWord ab = commutator_word(a, b);
    p.relators = {commutator_word(a, ab), commutator_word(b, ab)};
    return p;
}

} // namespace

RunReport cmd_heisenberg_demo(const DemoOptions &options)
{
    const Matrix lattice = options.lattice.value_or(
        Matrix(3, 3, {Scalar(1), Scalar(0), Scalar(0), Scalar(0), Scalar(1), Scalar(0), Scalar(0), Scalar(0), ratio(1, 2)}));
    const Matrix M = options.action.value_or(Matrix(2, 2, {Scalar(2), Scalar(3), Scalar(1), Scalar(2)}));
    if (lattice.rows() != 3 || M.rows() != 2 || M.cols() != 2)
        throw Error("heisenberg-demo: lattice needs 3 rows and the action must be 2 x 2");
    const Json inputs{{"lattice", io::to_json(lattice)}, {"action", io::to_json(M)}};

    return run("heisenberg-demo", inputs, [&](RunReport &report) {
        const LieAlgebra h = heisenberg_algebra();
        Json steps = Json::array();
        auto step = [&](int number, const std::string &name, bool passed, Json detail) {
            steps.push_back(Json{{"step", number}, {"check", name}, {"passed", passed}, {"detail", detail}});
            if (!passed)
                report.completed = false;
            return passed;
        };
        auto finish = [&](const std::string &verdict) { return Json{{"steps", steps}, {"verdict", verdict}}; };

        // (1) the Lie algebra
        if (!step(1, "Jacobi identity for h", check_jacobi(h).empty(), io::to_json(h)))
            return finish("aborted at step 1");

        // (2) the lattice H = exp(lattice)
        const LatticeVerdict lv = lattice_closed_under_bch(h, lattice);
        if (!step(2, "lattice closed under the BCH product", lv.closed, lattice_json(lv)))
            return finish("aborted at step 2");

        // (3) the SL2 action, extended by det on the centre
        const Scalar det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
        Matrix aut(3, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                aut(i, j) = M(i, j);
        aut(2, 2) = det;
        bool keeps_lattice = true;
        for (std::size_t k = 0; k < lattice.cols(); ++k) {
            auto sol = solve_affine(lattice, aut * lattice.column(k));
            keeps_lattice = keeps_lattice && sol && Matrix(sol->particular.size(), 1, sol->particular).is_integral();
        }
        const bool automorphism = check_automorphism(h, aut);
        if (!step(3, "action is by lattice-preserving automorphisms",
                  M.is_integral() && det == 1 && automorphism && keeps_lattice,
                  Json{{"matrix", io::to_json(aut)},
                       {"det", format_scalar(det)},
                       {"automorphism", automorphism},
                       {"preserves_lattice", keeps_lattice}}))
            return finish("aborted at step 3");

        // (4) lower central series
        const auto dims = lcs_dims(h);
        if (!step(4, "lower central series dims", dims == std::vector<std::size_t>{3, 1, 0}, Json(dims)))
            return finish("aborted at step 4");

        // (5) h is not quadratically presented
        const QuadraticVerdict qv = is_quadratically_presented(h);
        if (!step(5, "h is not quadratically presented", !qv.quadratic && qv.conclusive && qv.failing_degree == 3,
                  verdict_json(qv)))
            return finish("aborted at step 5");

        // (6) [Gamma, Delta] has finite index in Delta
        const auto index = commutator_index(M);
        if (!step(6, "commutator subgroup has finite index", index.has_value(),
                  Json{{"index", index ? Json(index->get_str()) : Json("infinite")},
                       {"abelianization_test", index ? "passes: the real completion of the quotient is quadratic"
                                                     : "not applicable"}}))
            return finish("aborted at step 6");

        // (7) the class-2 representation does not lift one class further
        const LieAlgebra u = free_nilpotent(2, 3);
        const SemidirectGroup G(u);
        const GroupPresentation hp = heisenberg_group_presentation();
        const Assignment as{{"a", G.element(unit_vector(u.dim(), 0))}, {"b", G.element(unit_vector(u.dim(), 1))}};
        const OneClassLift lift = lift_one_class(hp, u, as, 3);
        const CriterionResult crit =
            lift_representation_criterion(h, u, Matrix::from_columns({unit_vector(5, 0), unit_vector(5, 1)}, 5));
        Json lift_detail = lift_json(lift, hp);
        lift_detail["criterion"] = Json{{"lifts", crit.lifts},
                                        {"obstruction_degree", crit.obstruction_degree},
                                        {"obstruction", io::to_json(crit.obstruction)}};
        if (!step(7, "representation into free_nilpotent(2,3) does not lift", !lift.lifted && !crit.lifts,
                  lift_detail))
            return finish("aborted at step 7");

        // (8) Massey product on the Chevalley-Eilenberg algebra
        const FiniteDGA ce = chevalley_eilenberg(h);
        const Cochain x{1, unit_vector(3, 0)}, y{1, unit_vector(3, 1)};
        const MasseyResult m = massey_triple(ce, x, x, y);
        if (!step(8, "Massey product <x*, x*, y*> is nonzero with zero indeterminacy",
                  !m.vanishes && m.indeterminacy.empty() && !is_zero(m.class_coords), massey_json(m)))
            return finish("aborted at step 8");

        return finish("excluded: not the fundamental group of a compact Kaehler manifold");
    });
}

} // namespace malcev::cli
