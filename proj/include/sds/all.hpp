#pragma once

#include <sds/audit.hpp>
#include <sds/efficiency.hpp>
#include <sds/errors.hpp>
#include <sds/esr.hpp>
#include <sds/extensions.hpp>
#include <sds/lp.hpp>
#include <sds/mr.hpp>
#include <sds/prefs.hpp>
#include <sds/rational.hpp>
#include <sds/rules.hpp>
#include <sds/sds.hpp>
#include <sds/search.hpp>
#include <sds/weak_orders.hpp>
