#pragma once

#include "prudentia/arrangements.hpp"
#include "prudentia/axioms.hpp"
#include "prudentia/core.hpp"
#include "prudentia/error.hpp"
#include "prudentia/finance.hpp"
#include "prudentia/linalg.hpp"
#include "prudentia/lp.hpp"
#include "prudentia/rational.hpp"
#include "prudentia/ranking_engine.hpp"
#include "prudentia/representation.hpp"
