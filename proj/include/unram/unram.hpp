#pragma once

// Umbrella header: exact multivariate field arithmetic, divisorial
// valuations and residue fields, quaternion symbols with residue maps,
// Hilbert symbols over the rationals, diagonal quadric classification over
// discrete valuation rings, quadric surface bundles, and the replayable
// unramified-class certificate machinery.

#include "unram/brauer.hpp"
#include "unram/bundle.hpp"
#include "unram/certificate.hpp"
#include "unram/dvr_models.hpp"
#include "unram/errors.hpp"
#include "unram/hilbert.hpp"
#include "unram/mpoly.hpp"
#include "unram/parse.hpp"
#include "unram/quadric_forms.hpp"
#include "unram/rat.hpp"
#include "unram/ratfunc.hpp"
#include "unram/valuation.hpp"
#include "unram/verifier.hpp"
