#include "ssfractal/errors.hpp"

namespace ssf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "InvalidInput";
    case ErrorKind::invalid_interval: return "InvalidInterval";
    case ErrorKind::empty_set: return "EmptySet";
    case ErrorKind::depth_overflow: return "DepthOverflow";
    case ErrorKind::index_out_of_schedule: return "IndexOutOfSchedule";
    case ErrorKind::negative_weight: return "NegativeWeight";
    case ErrorKind::horizon_too_small: return "HorizonTooSmall";
    case ErrorKind::too_few_scales: return "TooFewScales";
    case ErrorKind::ambiguous_expansion: return "AmbiguousExpansion";
    case ErrorKind::out_of_range: return "OutOfRange";
  }
  return "Unknown";
}

}  // namespace ssf
