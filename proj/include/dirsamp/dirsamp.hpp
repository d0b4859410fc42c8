#pragma once

#include "analysis.hpp"
#include "circular.hpp"
#include "envelope.hpp"
#include "inference.hpp"
#include "ingest.hpp"
#include "polynomial.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "special_fn.hpp"
#include "torus.hpp"
