#pragma once

#include "ldpcenc/decompose.hpp"
#include "ldpcenc/encoder.hpp"
#include "ldpcenc/formats.hpp"
#include "ldpcenc/tanner.hpp"

namespace ldpcenc {

// End-to-end preprocessing: degree reduction, decomposition, compilation.
struct PreprocessResult {
    TannerGraph graph; // working graph, after any splitting
    SplitMap split;
    DecompositionPlan plan;
    Schedule schedule;
};

PreprocessResult preprocess_code(const ParityCheckRows& h, EncodeMode mode);

} // namespace ldpcenc
