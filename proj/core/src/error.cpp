#include "rightsize/error.hpp"

namespace rightsize {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::malformed_catalog: return "MalformedCatalog";
        case Errc::duplicate_sku_id: return "DuplicateSkuId";
        case Errc::empty_catalog: return "EmptyCatalog";
        case Errc::file_too_large: return "FileTooLarge";
        case Errc::no_candidate_sku: return "NoCandidateSku";
        case Errc::malformed_row: return "MalformedRow";
        case Errc::unknown_dimension: return "UnknownDimension";
        case Errc::empty_trace: return "EmptyTrace";
        case Errc::grid_mismatch: return "GridMismatch";
        case Errc::no_feasible_sku: return "NoFeasibleSku";
        case Errc::unknown_sku: return "UnknownSku";
        case Errc::unknown_group: return "UnknownGroup";
        case Errc::trace_too_short: return "TraceTooShort";
        case Errc::window_too_long: return "WindowTooLong";
        case Errc::incomplete_vector: return "IncompleteVector";
        case Errc::empty_group_model: return "EmptyGroupModel";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

}  // namespace rightsize
