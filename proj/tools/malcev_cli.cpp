#include "malcev/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string_view>

using namespace malcev;
using malcev::io::Json;

namespace {

// "a,b,c" -> vector of scalars
Vector parse_list(const std::string &text)
{
    Vector v;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        v.push_back(parse_scalar(text.substr(start, end - start)));
        start = end + 1;
    }
    return v;
}

Json cochain_arg(const std::string &text, std::size_t degree)
{
    return Json{{"degree", degree}, {"coords", io::to_json(parse_list(text))}};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact computations with nilpotent Lie algebras, Malcev models and Maurer-Cartan elements"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_format = "json";
    bool timing = false;
    app.add_option("--out", out_format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", timing, "include wall-clock time in the report");

    std::size_t generators = 2, class_bound = 3, level = 2;
    std::string file1, file2, file3, seed_file, a_arg, b_arg, c_arg, lattice_file, action_arg;
    std::vector<std::size_t> degrees{1, 1, 1};

    auto *hall = app.add_subcommand("hall", "list the Hall basis of the free nilpotent Lie algebra");
    hall->add_option("-k,--generators", generators)->required();
    hall->add_option("-c,--class", class_bound)->required();

    auto *bch = app.add_subcommand("bch", "log(exp x exp y) in the free nilpotent Lie algebra");
    bch->add_option("x", file1, "element JSON {word: scalar}")->required()->check(CLI::ExistingFile);
    bch->add_option("y", file2, "element JSON {word: scalar}")->required()->check(CLI::ExistingFile);
    bch->add_option("-c,--class", class_bound)->required();
    bch->add_option("-k,--generators", generators);

    auto *quad = app.add_subcommand("quadcheck", "decide whether a nilpotent Lie algebra is quadratically presented");
    quad->add_option("algebra", file1)->required()->check(CLI::ExistingFile);

    auto *model = app.add_subcommand("malcev-model", "quadratic Malcev model L(H1)/<dual of the cup product>");
    model->add_option("cup", file1)->required()->check(CLI::ExistingFile);
    model->add_option("-c,--class", class_bound)->required();

    auto *mc = app.add_subcommand("mc", "staged Maurer-Cartan solve in A (x) N");
    mc->add_option("dga", file1)->required()->check(CLI::ExistingFile);
    mc->add_option("coefficients", file2)->required()->check(CLI::ExistingFile);
    mc->add_option("--seed", seed_file, "JSON array: degree-1 element of A (x) N")->check(CLI::ExistingFile);

    auto *massey = app.add_subcommand("massey", "triple Massey product <a, b, c>");
    massey->add_option("dga", file1)->required()->check(CLI::ExistingFile);
    massey->add_option("a", a_arg, "coordinates, comma separated")->required();
    massey->add_option("b", b_arg)->required();
    massey->add_option("c", c_arg)->required();
    massey->add_option("--degrees", degrees, "degrees of a, b, c")->expected(3);

    auto *lift = app.add_subcommand("lift", "lift a representation one class further");
    lift->add_option("presentation", file1)->required()->check(CLI::ExistingFile);
    lift->add_option("target", file2)->required()->check(CLI::ExistingFile);
    lift->add_option("assignment", file3)->required()->check(CLI::ExistingFile);
    lift->add_option("--level", level, "relators must land in Gamma_level of the target")->required();

    auto *lattice = app.add_subcommand("lattice-check", "is the Z-span of the given vectors closed under BCH");
    lattice->add_option("algebra", file1)->required()->check(CLI::ExistingFile);
    lattice->add_option("lattice", file2, "matrix JSON, columns generate")->required()->check(CLI::ExistingFile);

    auto *demo = app.add_subcommand("heisenberg-demo", "the Heisenberg example end to end");
    demo->add_option("--lattice", lattice_file, "replacement lattice (matrix JSON, columns)")
        ->check(CLI::ExistingFile);
    demo->add_option("--action", action_arg, "replacement 2x2 matrix, row-major, comma separated");

    CLI11_PARSE(app, argc, argv);

    try {
        cli::RunReport report;
        if (*hall)
            report = cli::cmd_hall(generators, class_bound);
        else if (*bch)
            report = cli::cmd_bch(io::read_file(file1), io::read_file(file2), class_bound, generators);
        else if (*quad)
            report = cli::cmd_quadcheck(io::read_file(file1));
        else if (*model)
            report = cli::cmd_malcev_model(io::read_file(file1), class_bound);
        else if (*mc)
            report = cli::cmd_mc(io::read_file(file1), io::read_file(file2),
                                 seed_file.empty() ? std::nullopt : std::optional<Json>(io::read_file(seed_file)));
        else if (*massey)
            report = cli::cmd_massey(io::read_file(file1), cochain_arg(a_arg, degrees[0]),
                                     cochain_arg(b_arg, degrees[1]), cochain_arg(c_arg, degrees[2]));
        else if (*lift)
            report = cli::cmd_lift(io::read_file(file1), io::read_file(file2), io::read_file(file3), level);
        else if (*lattice)
            report = cli::cmd_lattice_check(io::read_file(file1), io::read_file(file2));
        else {
            cli::DemoOptions options;
            if (!lattice_file.empty())
                options.lattice = io::matrix_from_json(io::read_file(lattice_file));
            if (!action_arg.empty()) {
                const Vector m = parse_list(action_arg);
                if (m.size() != 4)
                    throw Error("--action needs 4 entries");
                options.action = Matrix(2, 2, m);
            }
            report = cli::cmd_heisenberg_demo(options);
        }

        if (out_format == "json")
            std::cout << cli::to_json(report, timing).dump(2) << "\n";
        else
            std::cout << cli::to_text(report, timing);
        return report.completed ? 0 : 2;
    } catch (const Error &e) {
        const bool internal = std::string_view(e.what()).starts_with("internal");
        std::cerr << (internal ? "" : "error: ") << e.what() << "\n";
        return internal ? 3 : 1;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
