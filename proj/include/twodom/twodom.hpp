#pragma once

// Convenience umbrella for the whole library.

#include "cli.hpp"
#include "domination.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "multigraph.hpp"
#include "recognition.hpp"
#include "selfcheck.hpp"
#include "transform.hpp"
