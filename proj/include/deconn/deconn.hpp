#pragma once

#include "deconn/bench.hpp"
#include "deconn/certificate.hpp"
#include "deconn/component_tracker.hpp"
#include "deconn/cut_oracle.hpp"
#include "deconn/decremental.hpp"
#include "deconn/euler_tour.hpp"
#include "deconn/exact_boundary.hpp"
#include "deconn/generators.hpp"
#include "deconn/graph.hpp"
#include "deconn/oracle.hpp"
#include "deconn/random.hpp"
#include "deconn/small_boundary.hpp"
#include "deconn/xor_boundary.hpp"
