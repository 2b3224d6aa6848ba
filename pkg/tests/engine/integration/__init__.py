"""Long-running stationarity and end-to-end tests."""
