#pragma once

#include "nsum/attack.hpp"
#include "nsum/codec.hpp"
#include "nsum/encrypt.hpp"
#include "nsum/error.hpp"
#include "nsum/experiment.hpp"
#include "nsum/lexicon.hpp"
#include "nsum/match.hpp"
