#pragma once

#include "snrshrink/data_ingest.hpp"
#include "snrshrink/diagnostics.hpp"
#include "snrshrink/error.hpp"
#include "snrshrink/exaggeration.hpp"
#include "snrshrink/heavy_tail.hpp"
#include "snrshrink/mixture_prior.hpp"
#include "snrshrink/normal.hpp"
#include "snrshrink/posterior.hpp"
#include "snrshrink/quadrature.hpp"
#include "snrshrink/rng.hpp"
