#pragma once

// Umbrella header: the full library except the CLI (pull in qanneal/cli.hpp
// separately if you want cli_main).
#include "qanneal/anneal.hpp"
#include "qanneal/errors.hpp"
#include "qanneal/graph.hpp"
#include "qanneal/io.hpp"
#include "qanneal/merits.hpp"
#include "qanneal/operators.hpp"
#include "qanneal/spectrum.hpp"
