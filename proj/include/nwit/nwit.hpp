#pragma once

#include "nwit/eigenfunction.hpp"
#include "nwit/error.hpp"
#include "nwit/exact.hpp"
#include "nwit/io.hpp"
#include "nwit/oracle.hpp"
#include "nwit/spectrum.hpp"
#include "nwit/twosquares.hpp"
#include "nwit/witness.hpp"
