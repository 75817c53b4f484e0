# Инициализация пакета utils
