# Black-box checker source package
