#include "malcev/commands.hpp"
#include "dga_examples.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace malcev;
using namespace testing_support;
using malcev::io::Json;

namespace {

Json data(const std::string &name) { return io::read_file(std::string(MALCEV_DATA_DIR) + "/" + name); }

void expect_same_dga(const FiniteDGA &a, const FiniteDGA &b)
{
    ASSERT_EQ(a.dims, b.dims);
    EXPECT_EQ(a.d, b.d);
    EXPECT_EQ(a.table, b.table);
}

LieAlgebra ungraded(LieAlgebra L)
{
    L.clear_grading();
    return L;
}

} // namespace

TEST(IO, ScalarsAndMatrices)
{
    EXPECT_EQ(io::to_json(ratio(-3, 6)), "-1/2");
    EXPECT_EQ(io::scalar_from_json(Json("4/6")), ratio(2, 3));
    EXPECT_EQ(io::scalar_from_json(Json(7)), Scalar(7));
    EXPECT_THROW(io::scalar_from_json(Json(0.5)), Error);
    EXPECT_THROW(io::scalar_from_json(Json("1/0")), Error);
    const Matrix m = imat(2, 3, {1, 2, 3, 4, 5, 6});
    EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
    EXPECT_THROW(io::matrix_from_json(Json::parse(R"([["1"],["1","2"]])")), Error);
}

TEST(IO, DataFilesMatchLibraryConstructions)
{
    expect_same_dga(io::dga_from_json(data("torus_dga.json")), torus_algebra());
    expect_same_dga(io::dga_from_json(data("acyclic_cone.json")), acyclic_cone());
    expect_same_dga(io::dga_from_json(data("ce_heisenberg.json")), chevalley_eilenberg(heisenberg_algebra()));
    EXPECT_EQ(io::lie_algebra_from_json(data("heisenberg.json")), heisenberg_algebra());
    EXPECT_EQ(ungraded(io::lie_algebra_from_json(data("free_nilpotent_2_3.json"))),
              ungraded(free_nilpotent(2, 3)));
}

TEST(IO, RoundTrips)
{
    const LieAlgebra F = free_nilpotent(3, 3);
    EXPECT_EQ(io::lie_algebra_from_json(io::to_json(F)), F);
    const FiniteDGA T = tensor_dga(torus_algebra(), acyclic_cone());
    expect_same_dga(io::dga_from_json(io::to_json(T)), T);

    const HallBasis hall(2, 4);
    std::mt19937 rng(31);
    for (int t = 0; t < 10; ++t) {
        const FreeLieElement x = hall.from_vector(random_vector(rng, hall.size()));
        EXPECT_EQ(io::free_element_from_json(hall, io::to_json(hall, x)), x);
    }
    // non-Hall words are rewritten: [y, x] = -[x, y]
    const FreeLieElement yx = io::free_element_from_json(hall, Json::parse(R"({"[1,0]": "2"})"));
    EXPECT_EQ(hall.to_vector(yx)[2], Scalar(-2));

    const QuadraticPresentation qp{3, {ivec({1, 0, -1}), ivec({0, 1, 0})}};
    const QuadraticPresentation back = io::presentation_from_json(io::to_json(qp));
    EXPECT_EQ(back.generators, 3u);
    EXPECT_EQ(back.relations, qp.relations);
}

TEST(IO, MalformedInputIsRejected)
{
    EXPECT_THROW(io::lie_algebra_from_json(Json::parse(R"({"dim": 3, "brackets": [
        {"i": 0, "j": 1, "value": ["0","0","1"]}, {"i": 0, "j": 2, "value": ["1","0","0"]}]})")),
                 Error); // Jacobi
    EXPECT_THROW(io::lie_algebra_from_json(Json::parse(R"({"dim": 2, "brackets": [
        {"i": 0, "j": 1, "value": ["1"]}]})")),
                 Error); // wrong length
    EXPECT_THROW(io::lie_algebra_from_json(Json::parse(R"({"dim": 2, "brackets": [
        {"i": 0, "j": 1, "value": ["1","0"]}, {"i": 1, "j": 0, "value": ["1","0"]}]})")),
                 Error); // listed twice
    EXPECT_THROW(io::lie_algebra_from_json(Json::parse(R"({"dim": 2, "brackets": [
        {"i": 0, "j": 0, "value": ["1","0"]}]})")),
                 Error); // [x, x] != 0
    EXPECT_THROW(io::dga_from_json(Json::parse(R"({"dims": [1, 1], "d": [[["1"]]], "product": [
        {"p":0,"i":0,"q":0,"j":0,"value":["1"]}, {"p":0,"i":0,"q":1,"j":0,"value":["1"]}]})")),
                 Error); // d(1) != 0 breaks Leibniz
    EXPECT_THROW(io::dga_from_json(Json::parse(R"({"dims": [1, 2], "d": [[["0","0"]]]})")), Error);
    EXPECT_THROW(io::cup_datum_from_json(Json::parse(R"({"h1": 2, "h2": 1,
        "pairing": [[["0"],["1"]],[["1"],["0"]]]})")),
                 Error); // symmetric
    EXPECT_THROW(io::free_element_from_json(HallBasis(2, 2), Json::parse(R"({"[0,2]": "1"})")), Error);
    EXPECT_THROW(io::group_presentation_from_json(Json::parse(R"({"generators": ["a"], "relators": [["b"]]})")),
                 Error);
}

TEST(Commands, HallAndBCH)
{
    EXPECT_EQ(cli::cmd_hall(2, 3).verdicts["count"], 5);
    EXPECT_EQ(cli::cmd_hall(1, 3).verdicts["count"], 1);
    EXPECT_EQ(cli::cmd_hall(3, 2).verdicts["count"], 6);

    const Json z = cli::cmd_bch(data("bch_x.json"), data("bch_y.json"), 2).verdicts["element"];
    EXPECT_EQ(z, Json::parse(R"({"0": "1", "1": "1", "[0,1]": "1/2"})"));
    const Json x = cli::cmd_bch(data("bch_x.json"), Json::object(), 4).verdicts["element"];
    EXPECT_EQ(x, data("bch_x.json"));
}

TEST(Commands, VerdictsMatchLibrary)
{
    const Json q = cli::cmd_quadcheck(data("heisenberg.json")).verdicts;
    EXPECT_EQ(q["quadratic"], false);
    EXPECT_EQ(q["failing_degree"], 3);
    EXPECT_EQ(cli::cmd_quadcheck(data("abelian3.json")).verdicts["quadratic"], true);
    EXPECT_EQ(cli::cmd_quadcheck(data("abelian3.json")).verdicts["verified"], true);

    EXPECT_EQ(cli::cmd_malcev_model(data("torus_cup.json"), 3).verdicts["degree_dims"], Json::parse("[2, 0, 0]"));
    EXPECT_EQ(cli::cmd_malcev_model(data("zero_cup.json"), 3).verdicts["degree_dims"], Json::parse("[2, 1, 2]"));
    EXPECT_EQ(cli::cmd_malcev_model(data("genus2_cup.json"), 3).verdicts["degree_dims"],
              Json::parse("[4, 5, 16]"));

    const Json flat = cli::cmd_mc(data("torus_dga.json"), data("abelian1.json")).verdicts;
    EXPECT_EQ(flat["verdict"], "solved");
    EXPECT_EQ(flat["stages"].size(), 1u);
    EXPECT_EQ(cli::cmd_mc(data("acyclic_cone.json"), data("heisenberg.json")).verdicts["verdict"], "solved");
    const Json obs =
        cli::cmd_mc(data("torus_dga.json"), data("heisenberg.json"), data("mc_obstructed_seed.json")).verdicts;
    EXPECT_EQ(obs["verdict"], "obstructed");
    EXPECT_EQ(obs["stages"][1]["obstruction"][0]["h2_class"], Json::parse(R"(["1"])"));

    const Json one{{"degree", 1}, {"coords", {"1", "0"}}}, two{{"degree", 1}, {"coords", {"0", "1"}}};
    EXPECT_EQ(cli::cmd_massey(data("torus_dga.json"), one, one, one).verdicts["vanishes"], true);
    const Json xs{{"degree", 1}, {"coords", {"1", "0", "0"}}}, ys{{"degree", 1}, {"coords", {"0", "1", "0"}}};
    EXPECT_EQ(cli::cmd_massey(data("ce_heisenberg.json"), xs, xs, ys).verdicts["vanishes"], false);
    EXPECT_THROW(cli::cmd_massey(data("torus_dga.json"), one, two, one), Error); // ab is not exact

    const Json lift = cli::cmd_lift(data("heisenberg_group.json"), data("free_nilpotent_2_3.json"),
                                    data("standard_assignment.json"), 3)
                          .verdicts;
    EXPECT_EQ(lift["lifted"], false);
    EXPECT_EQ(cli::cmd_lattice_check(data("heisenberg.json"), data("heisenberg_lattice.json")).verdicts["closed"],
              true);
    EXPECT_EQ(cli::cmd_lattice_check(data("heisenberg.json"), data("integer_lattice.json")).verdicts["closed"],
              false);
}

TEST(Commands, HeisenbergDemoAndSubstitutions)
{
    const cli::RunReport r = cli::cmd_heisenberg_demo();
    EXPECT_TRUE(r.completed);
    ASSERT_EQ(r.verdicts["steps"].size(), 8u);
    for (const auto &s : r.verdicts["steps"])
        EXPECT_EQ(s["passed"], true) << s["check"];

    cli::DemoOptions z3;
    z3.lattice = Matrix::identity(3);
    const cli::RunReport bad = cli::cmd_heisenberg_demo(z3);
    EXPECT_FALSE(bad.completed);
    ASSERT_EQ(bad.verdicts["steps"].size(), 2u);
    const Json product = bad.verdicts["steps"][1]["detail"]["witness"]["product"];
    EXPECT_EQ(product[2].get<std::string>().find("/2") != std::string::npos, true);

    cli::DemoOptions trivial;
    trivial.action = Matrix::identity(2);
    const cli::RunReport inf = cli::cmd_heisenberg_demo(trivial);
    EXPECT_FALSE(inf.completed);
    ASSERT_EQ(inf.verdicts["steps"].size(), 6u);
    EXPECT_EQ(inf.verdicts["steps"][5]["detail"]["index"], "infinite");
}

TEST(Commands, ReportsAreDeterministic)
{
    const auto a = cli::to_json(cli::cmd_heisenberg_demo(), false).dump();
    const auto b = cli::to_json(cli::cmd_heisenberg_demo(), false).dump();
    EXPECT_EQ(a, b);
    const auto t1 = cli::to_text(cli::cmd_malcev_model(data("genus2_cup.json"), 3), false);
    const auto t2 = cli::to_text(cli::cmd_malcev_model(data("genus2_cup.json"), 3), false);
    EXPECT_EQ(t1, t2);
    EXPECT_NE(cli::cmd_hall(2, 3).inputs_digest, cli::cmd_hall(2, 4).inputs_digest);
}
