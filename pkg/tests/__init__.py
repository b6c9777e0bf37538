# QuarticPell Tests
