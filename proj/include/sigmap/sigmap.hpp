#pragma once

#include "sigmap/dtw.hpp"
#include "sigmap/evaluation.hpp"
#include "sigmap/extremes.hpp"
#include "sigmap/format.hpp"
#include "sigmap/pipeline.hpp"
#include "sigmap/segmentation.hpp"
#include "sigmap/similarity.hpp"
#include "sigmap/svc.hpp"
