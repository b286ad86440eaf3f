#pragma once

#include "axlab/error.hpp"
#include "axlab/random.hpp"
#include "axlab/types.hpp"
#include "axlab/core.hpp"
#include "axlab/quality.hpp"
#include "axlab/hull.hpp"
#include "axlab/superball.hpp"
#include "axlab/clusterers.hpp"
#include "axlab/rich_fn.hpp"
#include "axlab/transforms.hpp"
#include "axlab/generators.hpp"
#include "axlab/io.hpp"
#include "axlab/axioms.hpp"
#include "axlab/repro.hpp"
