#pragma once

#include "bsnn/affine.hpp"
#include "bsnn/automorphism.hpp"
#include "bsnn/decide.hpp"
#include "bsnn/io.hpp"
#include "bsnn/oracle.hpp"
#include "bsnn/parse.hpp"
#include "bsnn/repset.hpp"
#include "bsnn/shifts.hpp"
#include "bsnn/words.hpp"
