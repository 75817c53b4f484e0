# Инициализация пакета handlers
