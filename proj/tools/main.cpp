#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv)
{
    poly::cli::Options opts;
    std::string input_path;
    CLI::App app{"Polynomial endofunctors, trees and presheaves"};
    app.add_option("command", opts.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(poly::cli::command_names()));
    app.add_option("args", opts.args, "Names and labels the command works on");
    app.add_option("-f,--input", input_path, "Document file (default: stdin)");
    app.add_option("--max-edges", opts.max_edges, "Edge truncation bound")->envname("POLYTREE_MAX_EDGES");
    app.add_option("--max-nodes", opts.max_nodes, "Node truncation bound")->envname("POLYTREE_MAX_NODES");
    app.add_option("--site", opts.site, "Presheaf site")->check(CLI::IsMember({"temb", "tree", "planar"}));
    app.add_option("--out", opts.out_path, "Write DOT output to a file");
    app.add_flag("--json", opts.json, "Machine-readable output");
    app.add_flag("--quiet", opts.quiet, "Only set the exit code");
    app.add_flag("--count", opts.count, "Print counts instead of listings");
    app.add_flag("--no-stumps", opts.no_stumps, "Exclude trees with nullary nodes");
    app.add_flag("--embeddings", opts.embeddings, "hom: tree embeddings only");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string input;
    if (input_path.empty() || input_path == "-") {
        input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(input_path);
        if (!f) {
            std::cerr << "error: cannot read " << input_path << "\n";
            return 2;
        }
        input.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    return poly::cli::run(opts, input, std::cout, std::cerr);
}
