#pragma once

#include "ext_nat.hpp"
#include "algebra.hpp"
#include "index.hpp"
#include "generator.hpp"
#include "graph.hpp"
#include "groupoid.hpp"
#include "numeric.hpp"
#include "cayley.hpp"
#include "blocks.hpp"
#include "family.hpp"
#include "report.hpp"
