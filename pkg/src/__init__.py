# Main source package
