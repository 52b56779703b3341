#pragma once

#include "xlsec/analysis.hpp"
#include "xlsec/bits.hpp"
#include "xlsec/builtin_cascades.hpp"
#include "xlsec/convcrypt.hpp"
#include "xlsec/errors.hpp"
#include "xlsec/frames.hpp"
#include "xlsec/gf2.hpp"
#include "xlsec/keybundle.hpp"
#include "xlsec/numtheory.hpp"
#include "xlsec/pipeline.hpp"
#include "xlsec/rng.hpp"
#include "xlsec/rns.hpp"
#include "xlsec/rsa.hpp"
#include "xlsec/signaling.hpp"
#include "xlsec/subband.hpp"
#include "xlsec/viterbi.hpp"
