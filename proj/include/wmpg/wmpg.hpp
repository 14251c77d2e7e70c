#pragma once

#include "wmpg/attractor.hpp"
#include "wmpg/best_response.hpp"
#include "wmpg/chain.hpp"
#include "wmpg/enumerate.hpp"
#include "wmpg/errors.hpp"
#include "wmpg/game.hpp"
#include "wmpg/game_json.hpp"
#include "wmpg/gap.hpp"
#include "wmpg/generators.hpp"
#include "wmpg/graph.hpp"
#include "wmpg/linalg.hpp"
#include "wmpg/mealy.hpp"
#include "wmpg/oracle.hpp"
#include "wmpg/phase.hpp"
#include "wmpg/product.hpp"
#include "wmpg/random.hpp"
#include "wmpg/rational.hpp"
#include "wmpg/simulate.hpp"
#include "wmpg/stochastic.hpp"
#include "wmpg/synthesis.hpp"
#include "wmpg/tracker.hpp"
#include "wmpg/vertex_set.hpp"
#include "wmpg/window.hpp"
