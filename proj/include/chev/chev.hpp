#pragma once

// Umbrella header.
#include "chev/any_group.hpp"
#include "chev/chevalley.hpp"
#include "chev/coxeter.hpp"
#include "chev/coxeter_graph.hpp"
#include "chev/io.hpp"
#include "chev/selftest.hpp"
#include "chev/strata.hpp"
#include "chev/whitney.hpp"
