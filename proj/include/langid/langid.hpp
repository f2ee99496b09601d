#pragma once

#include "langid/error.hpp"
#include "langid/eval.hpp"
#include "langid/noise.hpp"
#include "langid/profile.hpp"
#include "langid/scoring.hpp"
#include "langid/textstats.hpp"
#include "langid/unicode.hpp"
