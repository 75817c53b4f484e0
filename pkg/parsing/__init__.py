# Инициализация пакета parsing
