int svbench_placeholder_test_capi;
