# QuarticPell Source Package
