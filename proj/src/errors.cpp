#include "hypermatch/errors.hpp"

namespace hypermatch {

const char* errc_name(errc c) {
    switch (c) {
    case errc::non_uniform_edge: return "NonUniformEdge";
    case errc::out_of_range_vertex: return "OutOfRangeVertex";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::duplicate_vertex_in_edge: return "DuplicateVertexInEdge";
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::mixed_uniformity: return "MixedUniformity";
    case errc::syntax_error: return "SyntaxError";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::disjointness_violated: return "DisjointnessViolated";
    case errc::invalid_walk: return "InvalidWalk";
    case errc::not_a_hypertree: return "NotAHypertree";
    case errc::not_extendable: return "NotExtendable";
    case errc::not_found: return "NotFound";
    case errc::construction_ambiguous: return "ConstructionAmbiguous";
    case errc::rational_blowup: return "RationalBlowup";
    case errc::no_three_fixed_points: return "NoThreeFixedPoints";
    case errc::domain_error: return "DomainError";
    case errc::usage_error: return "UsageError";
    case errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

int errc_exit_code(errc c) {
    switch (c) {
    case errc::usage_error:
        return 2;
    case errc::syntax_error:
        return 3;
    case errc::non_uniform_edge:
    case errc::out_of_range_vertex:
    case errc::duplicate_edge:
    case errc::duplicate_vertex_in_edge:
    case errc::unknown_vertex:
    case errc::mixed_uniformity:
    case errc::disjointness_violated:
        return 4;
    case errc::budget_exceeded:
    case errc::rational_blowup:
        return 5;
    case errc::not_found:
    case errc::no_three_fixed_points:
        return 6;
    case errc::construction_ambiguous:
    case errc::not_extendable:
        return 7;
    case errc::domain_error:
    case errc::invalid_walk:
    case errc::not_a_hypertree:
        return 8;
    case errc::internal_error:
        return 9;
    }
    return 9;
}

} // namespace hypermatch
