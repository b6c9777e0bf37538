# QuarticPell Configuration
