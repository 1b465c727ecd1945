#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ipalg/errors.hpp"
#include "ipalg/guards.hpp"
#include "ipalg/model_io.hpp"

namespace {

using ipalg::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ipalg::model_error("cannot open model file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

Json scope_names_json(const std::string& comma_list) {
    Json out = Json::array();
    for (const std::string& name : split(comma_list, ',')) out.push_back(name);
    return out;
}

struct Cli {
    std::string model_path;
    std::string out_path;
    std::uint64_t max_cells = 0;
    std::uint64_t max_rays = 0;

    std::string piece, piece2, gamble_json, scope_csv, scopes_arg, as_name;
    std::vector<std::string> pieces;
};

void emit(const Cli& cli, const Json& report) {
    std::string text = ipalg::dump_report(report);
    if (cli.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cli.out_path, std::ios::binary);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact algebra of desirable-gamble cones and lower previsions"};
    app.require_subcommand(1);
    app.fallthrough();

    Cli cli;
    app.add_option("--model", cli.model_path, "model file (JSON)")->required();
    app.add_option("--out", cli.out_path, "write the report here instead of stdout");
    app.add_option("--max-cells", cli.max_cells, "lower the cell guard");
    app.add_option("--max-rays", cli.max_rays, "lower the ray guard");

    CLI::App* run = app.add_subcommand("run", "execute the model's query list");

    CLI::App* coh = app.add_subcommand("check-coherence", "coherence of one piece");
    coh->add_option("piece", cli.piece)->required();

    CLI::App* prev = app.add_subcommand("prevision", "lower prevision of a gamble");
    prev->add_option("piece", cli.piece)->required();
    prev->add_option("--gamble", cli.gamble_json, "gamble as JSON")->required();

    CLI::App* upper = app.add_subcommand("upper", "upper prevision of a gamble");
    upper->add_option("piece", cli.piece)->required();
    upper->add_option("--gamble", cli.gamble_json, "gamble as JSON")->required();

    CLI::App* cont = app.add_subcommand("contains", "cone membership of a gamble");
    cont->add_option("piece", cli.piece)->required();
    cont->add_option("--gamble", cli.gamble_json, "gamble as JSON")->required();

    CLI::App* sig = app.add_subcommand("sigma", "lower prevision of a cone piece");
    sig->add_option("piece", cli.piece)->required();
    sig->add_option("--as", cli.as_name, "store the result under this name");

    CLI::App* comb = app.add_subcommand("combine", "combine two pieces");
    comb->add_option("piece1", cli.piece)->required();
    comb->add_option("piece2", cli.piece2)->required();

    CLI::App* marg = app.add_subcommand("marginalize", "project a piece to a scope");
    marg->add_option("piece", cli.piece)->required();
    marg->add_option("--scope", cli.scope_csv, "comma-separated variables")->required();

    CLI::App* credal = app.add_subcommand("credal-vertices", "credal polytope vertices");
    credal->add_option("piece", cli.piece)->required();

    CLI::App* compat = app.add_subcommand("compatible", "marginal-problem verdict");
    compat->add_option("pieces", cli.pieces)->required()->expected(-1);

    CLI::App* solve = app.add_subcommand("solve-marginal", "join-tree marginals");
    solve->add_option("pieces", cli.pieces)->required()->expected(-1);

    CLI::App* rip = app.add_subcommand("rip", "running intersection property of scopes");
    rip->add_option("--scopes", cli.scopes_arg,
                    "space-separated scopes, comma-separated variables")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        // Guards may only be lowered, never raised.
        if (cli.max_cells > 0 && cli.max_cells < ipalg::guards().max_cells)
            ipalg::guards().max_cells = cli.max_cells;
        if (cli.max_rays > 0 && cli.max_rays < ipalg::guards().max_rays)
            ipalg::guards().max_rays = cli.max_rays;

        ipalg::ModelDocument doc = ipalg::parse_model(read_file(cli.model_path));

        Json queries = Json::array();
        auto one = [&](Json q) {
            if (!cli.as_name.empty()) q["as"] = cli.as_name;
            queries.push_back(std::move(q));
        };
        if (run->parsed()) {
            queries = doc.queries;
        } else if (coh->parsed()) {
            one({{"command", "check-coherence"}, {"piece", cli.piece}});
        } else if (prev->parsed()) {
            one({{"command", "prevision"}, {"piece", cli.piece},
                 {"gamble", Json::parse(cli.gamble_json)}});
        } else if (upper->parsed()) {
            one({{"command", "upper"}, {"piece", cli.piece},
                 {"gamble", Json::parse(cli.gamble_json)}});
        } else if (cont->parsed()) {
            one({{"command", "contains"}, {"piece", cli.piece},
                 {"gamble", Json::parse(cli.gamble_json)}});
        } else if (sig->parsed()) {
            one({{"command", "sigma"}, {"piece", cli.piece}});
        } else if (comb->parsed()) {
            one({{"command", "combine"}, {"piece1", cli.piece}, {"piece2", cli.piece2}});
        } else if (marg->parsed()) {
            one({{"command", "marginalize"}, {"piece", cli.piece},
                 {"scope", scope_names_json(cli.scope_csv)}});
        } else if (credal->parsed()) {
            one({{"command", "credal-vertices"}, {"piece", cli.piece}});
        } else if (compat->parsed()) {
            one({{"command", "compatible"}, {"pieces", cli.pieces}});
        } else if (solve->parsed()) {
            one({{"command", "solve-marginal"}, {"pieces", cli.pieces}});
        } else if (rip->parsed()) {
            Json scopes = Json::array();
            for (const std::string& group : split(cli.scopes_arg, ' '))
                scopes.push_back(scope_names_json(group));
            one({{"command", "rip"}, {"scopes", scopes}});
        }

        ipalg::ModelDocument with_queries = std::move(doc);
        with_queries.queries = queries;
        emit(cli, ipalg::run_document(with_queries));
        return 0;
    } catch (const ipalg::guard_error& e) {
        std::cerr << "guard '" << e.name() << "': " << e.what() << "\n";
        return 3;
    } catch (const ipalg::model_error& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const Json::parse_error& e) {
        std::cerr << "argument parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
