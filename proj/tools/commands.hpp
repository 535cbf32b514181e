#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "document.hpp"

namespace poly::cli {

inline constexpr int schema_version = 1;

struct Options {
    std::string command;
    std::vector<std::string> args;
    std::optional<std::size_t> max_edges;
    std::optional<std::size_t> max_nodes;
    std::string site = "temb";
    bool json = false;
    bool quiet = false;
    bool count = false;
    bool no_stumps = false;
    bool embeddings = false;
    std::string out_path;
};

const std::vector<std::string>& command_names();

// Exit code 0 on success or a true verdict, 1 on a false verdict, 2 on errors.
int run(const Options& opts, const std::string& input, std::ostream& out, std::ostream& err);

std::string to_dot(const std::string& name, const Tree& t);

}  // namespace poly::cli
