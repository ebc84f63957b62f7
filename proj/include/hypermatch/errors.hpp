#pragma once

#include <stdexcept>
#include <string>

namespace hypermatch {

enum class errc {
    non_uniform_edge,
    out_of_range_vertex,
    duplicate_edge,
    duplicate_vertex_in_edge,
    unknown_vertex,
    mixed_uniformity,
    syntax_error,
    budget_exceeded,
    disjointness_violated,
    invalid_walk,
    not_a_hypertree,
    not_extendable,
    not_found,
    construction_ambiguous,
    rational_blowup,
    no_three_fixed_points,
    domain_error,
    usage_error,
    internal_error,
};

const char* errc_name(errc c);

/// Process exit code class for a given error (CLI maps these to 3..9).
int errc_exit_code(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw Error(code, msg);
}

} // namespace hypermatch
