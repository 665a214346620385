#pragma once

#include "dftauth/auth.hpp"
#include "dftauth/block_dft.hpp"
#include "dftauth/codec.hpp"
#include "dftauth/digest.hpp"
#include "dftauth/metrics.hpp"
#include "dftauth/pnm.hpp"
