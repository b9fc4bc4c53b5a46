#pragma once

#include "align/errors.hpp"
#include "align/graph.hpp"
#include "align/harness.hpp"
#include "align/io.hpp"
#include "align/model.hpp"
#include "align/perm_struct.hpp"
#include "align/permutation.hpp"
#include "align/recovery.hpp"
#include "align/report_json.hpp"
#include "align/rng.hpp"
#include "align/theory.hpp"
